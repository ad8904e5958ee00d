// Command line front end: validation, (co)end computation, lemma and
// interchange verdicts, Day convolution, compact-closure certification, the
// curated gallery and the randomized sweep. All inputs are the JSON
// documents described in the README. Exit codes: 0 all verdicts as
// expected, 1 a mathematical verdict differed from expectation, 2 input or
// validation error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "coendcalc/gallery.hpp"

using namespace coendcalc;
using nlohmann::json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

struct Output {
    std::string path;  // empty = stdout
    void write(const json& j) const {
        if (path.empty()) {
            std::cout << j.dump(2) << "\n";
        } else {
            std::ofstream out(path);
            out << j.dump(2) << "\n";
        }
    }
};

template <class F>
int cmd_coend_end(F f, const json& jcat, const json& jfun, bool want_end, const Output& out, bool witness) {
    auto cat = std::make_shared<const VCategory<F>>(vcategory_from_json(f, jcat));
    Report crep = validate_category(*cat);
    if (!crep.ok()) {
        std::cerr << "category invalid:\n" << crep.summary();
        return 2;
    }
    FunctorData<F> t = functor_from_json(cat, jfun);
    Report frep = validate_functor(t);
    if (!frep.ok()) {
        std::cerr << "bifunctor invalid:\n" << frep.summary();
        return 2;
    }
    json rep;
    if (want_end) {
        EndPres<F> e = end(t);
        rep["end_dim"] = e.dim();
        if (witness) rep["basis"] = mat_to_json(e.k.basis);
    } else {
        CoendPres<F> c = coend(t);
        rep["coend_dim"] = c.dim();
        if (witness) rep["proj"] = mat_to_json(c.q.proj);
    }
    out.write(rep);
    return 0;
}

template <class F>
int cmd_interchange(F f, const json& jcat, const json& jfun, const Output& out, bool witness) {
    auto cat = std::make_shared<const VCategory<F>>(vcategory_from_json(f, jcat));
    if (!validate_category(*cat).ok()) {
        std::cerr << "category invalid\n";
        return 2;
    }
    FunctorData<F> t = functor_from_json(cat, jfun);
    if (!validate_functor(t).ok()) {
        std::cerr << "bifunctor invalid\n";
        return 2;
    }
    InterchangeResult<F> r = interchange(t);
    json rep{{"interchange_iso", r.iso}, {"domain_dim", r.domain_dim}, {"codomain_dim", r.codomain_dim}};
    if (witness) rep["map"] = mat_to_json(r.map);
    out.write(rep);
    return 0;
}

template <class F>
int cmd_lemma(F f, const json& jcat, const json& jfun, const json& jphi, const Output& out, bool witness) {
    auto cat = std::make_shared<const VCategory<F>>(vcategory_from_json(f, jcat));
    if (!validate_category(*cat).ok()) {
        std::cerr << "category invalid\n";
        return 2;
    }
    FunctorData<F> t = functor_from_json(cat, jfun);
    if (!validate_functor(t).ok()) {
        std::cerr << "bifunctor invalid\n";
        return 2;
    }
    PairingIso<F> phi = pairing_from_json(*cat, jphi);
    Report prep = validate_pairing(*cat, phi);
    if (!prep.ok()) {
        std::cerr << "pairing invalid:\n" << prep.summary();
        return 2;
    }
    InterchangeResult<F> ic = interchange(t);
    LemmaAlphaResult<F> la = lemma_alpha(*cat, t, phi);
    json rep{{"coend_dim", la.coend_dim},   {"end_dim", la.end_dim},
             {"interchange_iso", ic.iso},   {"alpha_iso", la.iso},
             {"alpha_dinatural", la.dinatural}, {"witness_rank", rank(la.induced)}};
    if (witness) {
        rep["induced"] = mat_to_json(la.induced);
        json comps = json::object();
        for (int x = 0; x < cat->n(); ++x)
            for (int y = 0; y < cat->n(); ++y)
                comps[pair_key(cat->objects[x], cat->objects[y])] = mat_to_json(la.alpha[x][y]);
        rep["alpha_components"] = comps;
    }
    out.write(rep);
    // the lemma asserts the implication: a true hypothesis forces a true verdict
    if (ic.iso && !la.iso) return 1;
    return 0;
}

template <class F>
int cmd_convolve(F f, const json& jpm, const json& jf, const json& jg, bool dual_mode, const Output& out) {
    Promonoidal<F> pm = promonoidal_from_json(f, jpm);
    Report rep = validate_promonoidal(pm);
    if (!rep.ok()) {
        std::cerr << "promonoidal invalid:\n" << rep.summary();
        return 2;
    }
    json result;
    if (dual_mode) {
        FunctorData<F> g = functor_from_json(pm.cat, jf);
        if (!validate_functor(g).ok()) {
            std::cerr << "functor invalid\n";
            return 2;
        }
        DayDual<F> d = day_dual(g, pm);
        result["functor"] = functor_to_json(d.result);
        json dims = json::array();
        for (int x = 0; x < pm.cat->n(); ++x) dims.push_back(d.result.dims[x]);
        result["dims"] = dims;
    } else {
        FunctorData<F> a = functor_from_json(pm.cat, jf);
        FunctorData<F> b = functor_from_json(pm.cat, jg);
        if (!validate_functor(a).ok() || !validate_functor(b).ok()) {
            std::cerr << "functor invalid\n";
            return 2;
        }
        DayTensor<F> d = day_tensor(a, b, pm);
        result["functor"] = functor_to_json(d.result);
        json dims = json::array();
        for (int x = 0; x < pm.cat->n(); ++x) dims.push_back(d.result.dims[x]);
        result["dims"] = dims;
    }
    out.write(result);
    return 0;
}

template <class F>
int cmd_closure(F f, const json& jpm, const json& jstar, const json& jphi, const json& jg, const json& jh,
                const Output& out, bool witness) {
    Promonoidal<F> pm = promonoidal_from_json(f, jpm);
    Report rep = validate_promonoidal(pm);
    if (!rep.ok()) {
        std::cerr << "promonoidal invalid:\n" << rep.summary();
        return 2;
    }
    StarIso<F> star;
    if (jstar.contains("s")) {
        star = star_from_json(*pm.cat, jstar);
    } else if (jstar.contains("S_obj")) {
        AntipodeData<F> ad = antipode_from_json(*pm.cat, jstar);
        star = star_from_antipode(pm, ad).star;
    } else {
        std::cerr << "second input is neither a star isomorphism nor antipode data\n";
        return 2;
    }
    PairingIso<F> phi = pairing_from_json(*pm.cat, jphi);
    FunctorData<F> g = functor_from_json(pm.cat, jg);
    FunctorData<F> h = functor_from_json(pm.cat, jh);
    ClosureReport<F> cr = closure_witness(g, h, pm, star, phi);
    json per = json::object();
    for (int a = 0; a < pm.cat->n(); ++a) {
        json entry{{"lhs_dim", cr.lhs_dims[a]},
                   {"rhs_dim", cr.rhs_dims[a]},
                   {"iso", cr.family[a].rows() > 0 || cr.lhs_dims[a] == 0 ? is_iso(cr.family[a]) : false}};
        if (witness && cr.family[a].rows() > 0) entry["witness"] = mat_to_json(cr.family[a]);
        per[pm.cat->objects[a]] = entry;
    }
    out.write(json{{"per_object", per}, {"natural", cr.natural}, {"verdict", cr.verdict},
                   {"interchange_hypothesis", cr.interchange_ok}});
    return 0;
}

int cmd_validate(const json& doc, const std::string& category_path) {
    // detect the document type by its keys
    if (doc.contains("field") && doc.contains("comp")) {
        FieldSpec spec = FieldSpec::parse(doc.at("field").get<std::string>());
        return with_field(spec, [&](auto f) {
            auto cat = vcategory_from_json(f, doc);
            Report rep = validate_category(cat);
            std::cout << (rep.ok() ? "ok: valid category\n" : rep.summary());
            return rep.ok() ? 0 : 2;
        });
    }
    if (doc.contains("objects") && doc.contains("inv")) {
        Report rep = validate_groupoid(groupoid_from_json(doc));
        std::cout << (rep.ok() ? "ok: valid groupoid\n" : rep.summary());
        return rep.ok() ? 0 : 2;
    }
    if (doc.contains("p") && doc.contains("j")) {
        FieldSpec spec = FieldSpec::parse(doc.at("category").at("field").get<std::string>());
        return with_field(spec, [&](auto f) {
            auto pm = promonoidal_from_json(f, doc);
            Report rep = validate_promonoidal(pm);
            std::cout << (rep.ok() ? "ok: valid promonoidal structure\n" : rep.summary());
            return rep.ok() ? 0 : 2;
        });
    }
    if (doc.contains("phi") || doc.contains("variance")) {
        if (category_path.empty()) {
            std::cerr << "this document needs --category <file> for validation\n";
            return 2;
        }
        json jcat = load_json(category_path);
        FieldSpec spec = FieldSpec::parse(jcat.at("field").get<std::string>());
        return with_field(spec, [&](auto f) {
            using F = decltype(f);
            auto cat = std::make_shared<const VCategory<F>>(vcategory_from_json(f, jcat));
            if (doc.contains("phi")) {
                Report rep = validate_pairing(*cat, pairing_from_json(*cat, doc));
                std::cout << (rep.ok() ? "ok: valid pairing\n" : rep.summary());
                return rep.ok() ? 0 : 2;
            }
            Report rep = validate_functor(functor_from_json(cat, doc));
            std::cout << (rep.ok() ? "ok: valid functor\n" : rep.summary());
            return rep.ok() ? 0 : 2;
        });
    }
    if (doc.contains("S_obj") || doc.contains("s")) {
        std::cerr << "antipode and star documents validate against a promonoidal structure; "
                     "pass them to the closure subcommand\n";
        return 2;
    }
    std::cerr << "unrecognized document type\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact (co)end calculus and compact-closure certification for finite Vect-enriched categories"};
    app.require_subcommand(1);

    std::string out_path;
    bool emit_witness = false;
    app.add_option("--out", out_path, "write the JSON report to this path");
    app.add_flag("--emit-witness", emit_witness, "include witness matrices in reports");

    std::string file_a, file_b, file_c, file_d, file_e, category_path;

    auto* validate_cmd = app.add_subcommand("validate", "validate a JSON document");
    validate_cmd->add_option("file", file_a)->required();
    validate_cmd->add_option("--category", category_path, "category document for pairing/functor validation");

    auto* coend_cmd = app.add_subcommand("coend", "coend of a bifunctor");
    coend_cmd->add_option("category", file_a)->required();
    coend_cmd->add_option("bifunctor", file_b)->required();
    auto* end_cmd = app.add_subcommand("end", "end of a bifunctor");
    end_cmd->add_option("category", file_a)->required();
    end_cmd->add_option("bifunctor", file_b)->required();

    auto* lemma_cmd = app.add_subcommand("lemma", "induced coend-to-end verdict from a pairing");
    lemma_cmd->add_option("category", file_a)->required();
    lemma_cmd->add_option("bifunctor", file_b)->required();
    lemma_cmd->add_option("pairing", file_c)->required();

    auto* inter_cmd = app.add_subcommand("interchange", "canonical interchange verdict");
    inter_cmd->add_option("category", file_a)->required();
    inter_cmd->add_option("bifunctor", file_b)->required();

    auto* conv_cmd = app.add_subcommand("convolve", "Day convolution of two functors");
    conv_cmd->add_option("promonoidal", file_a)->required();
    conv_cmd->add_option("F", file_b)->required();
    conv_cmd->add_option("G", file_c)->required();

    auto* dual_cmd = app.add_subcommand("dual", "Day dual of a functor");
    dual_cmd->add_option("promonoidal", file_a)->required();
    dual_cmd->add_option("G", file_b)->required();

    auto* closure_cmd = app.add_subcommand("closure", "compact-closure certificate");
    closure_cmd->add_option("promonoidal", file_a)->required();
    closure_cmd->add_option("star_or_antipode", file_b)->required();
    closure_cmd->add_option("pairing", file_c)->required();
    closure_cmd->add_option("G", file_d)->required();
    closure_cmd->add_option("H", file_e)->required();

    std::string gallery_name;
    auto* gallery_cmd = app.add_subcommand("gallery", "run the curated scenarios");
    gallery_cmd->add_option("--name", gallery_name, "run only the named scenario");

    std::uint64_t seed = 1;
    int count = 100, max_objects = 3, max_hom = 3;
    std::string field_str = "Q";
    auto* fuzz_cmd = app.add_subcommand("fuzz", "randomized interchange and lemma sweep");
    fuzz_cmd->add_option("--seed", seed)->required();
    fuzz_cmd->add_option("--count", count)->required();
    fuzz_cmd->add_option("--max-objects", max_objects);
    fuzz_cmd->add_option("--max-hom", max_hom);
    fuzz_cmd->add_option("--field", field_str, "Q or F<p>");

    CLI11_PARSE(app, argc, argv);
    Output out{out_path};

    try {
        if (validate_cmd->parsed()) return cmd_validate(load_json(file_a), category_path);

        if (coend_cmd->parsed() || end_cmd->parsed() || inter_cmd->parsed() || lemma_cmd->parsed()) {
            json jcat = load_json(file_a);
            FieldSpec spec = FieldSpec::parse(jcat.at("field").get<std::string>());
            return with_field(spec, [&](auto f) {
                if (lemma_cmd->parsed())
                    return cmd_lemma(f, jcat, load_json(file_b), load_json(file_c), out, emit_witness);
                if (inter_cmd->parsed()) return cmd_interchange(f, jcat, load_json(file_b), out, emit_witness);
                return cmd_coend_end(f, jcat, load_json(file_b), end_cmd->parsed(), out, emit_witness);
            });
        }

        if (conv_cmd->parsed() || dual_cmd->parsed()) {
            json jpm = load_json(file_a);
            FieldSpec spec = FieldSpec::parse(jpm.at("category").at("field").get<std::string>());
            return with_field(spec, [&](auto f) {
                if (dual_cmd->parsed()) return cmd_convolve(f, jpm, load_json(file_b), json{}, true, out);
                return cmd_convolve(f, jpm, load_json(file_b), load_json(file_c), false, out);
            });
        }

        if (closure_cmd->parsed()) {
            json jpm = load_json(file_a);
            FieldSpec spec = FieldSpec::parse(jpm.at("category").at("field").get<std::string>());
            return with_field(spec, [&](auto f) {
                return cmd_closure(f, jpm, load_json(file_b), load_json(file_c), load_json(file_d),
                                   load_json(file_e), out, emit_witness);
            });
        }

        if (gallery_cmd->parsed()) {
            bool all_pass = true, found = false;
            json report = json::array();
            for (const Scenario& s : gallery()) {
                if (!gallery_name.empty() && s.name != gallery_name) continue;
                found = true;
                ScenarioOutcome o = run_scenario(s);
                std::cout << (o.pass ? "PASS " : "FAIL ") << s.name << "\n";
                for (const auto& m : o.mismatches) std::cout << "      " << m << "\n";
                json expected = json::array();
                for (const auto& e : s.expected)
                    expected.push_back(json{{"key", e.key}, {"value", e.value}, {"provenance", e.provenance}});
                report.push_back(json{{"name", s.name},
                                      {"pass", o.pass},
                                      {"expected", expected},
                                      {"actual", o.actual},
                                      {"mismatches", o.mismatches}});
                all_pass = all_pass && o.pass;
            }
            if (!gallery_name.empty() && !found) {
                std::cerr << "no scenario named " << gallery_name << "\n";
                return 2;
            }
            if (!out_path.empty()) out.write(report);
            return all_pass ? 0 : 1;
        }

        if (fuzz_cmd->parsed()) {
            FieldSpec spec = FieldSpec::parse(field_str);
            FuzzBounds bounds;
            bounds.max_objects = max_objects;
            bounds.max_hom = max_hom;
            return with_field(spec, [&](auto f) {
                auto rep = fuzz(seed, count, bounds, f);
                out.write(fuzz_report_to_json(rep, emit_witness));
                return rep.clean() ? 0 : 1;
            });
        }
    } catch (const consistency_error& e) {
        std::cerr << "internal consistency failure (engine bug): " << e.what() << "\n";
        return 2;
    } catch (const star_step_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
