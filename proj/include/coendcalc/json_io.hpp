#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "closure.hpp"
#include "compact.hpp"
#include "fuzz.hpp"

// JSON document formats. Rational scalars are strings "n/d" in lowest terms
// with positive denominator; prime-field scalars are integers in [0, p).
// Matrices list nonzero entries only. Object-pair keys use "X|Y". All
// emitters walk their data in a fixed order and nlohmann::json keeps object
// keys sorted, so equal inputs give byte-identical documents.

namespace coendcalc {

using nlohmann::json;

inline json scalar_to_json(const Rationals& f, const Rationals::Elem& v) { return f.to_string(v); }
inline json scalar_to_json(const PrimeField&, const PrimeField::Elem& v) { return v; }
inline Rationals::Elem scalar_from_json(const Rationals& f, const json& j) {
    if (j.is_number_integer()) return f.from_int(j.get<long>());
    return f.parse(j.get<std::string>());
}
inline PrimeField::Elem scalar_from_json(const PrimeField& f, const json& j) {
    if (j.is_string()) return f.parse(j.get<std::string>());
    return f.from_int(j.get<long>());
}

template <class F>
json mat_to_json(const Mat<F>& m) {
    json entries = json::array();
    m.for_each_nonzero([&](int i, int j, const typename F::Elem& v) {
        entries.push_back(json::array({i, j, scalar_to_json(m.field(), v)}));
    });
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

template <class F>
Mat<F> mat_from_json(F f, const json& j) {
    typename Mat<F>::Builder b(f, j.at("rows").get<int>(), j.at("cols").get<int>());
    for (const auto& e : j.at("entries")) b.set(e.at(0).get<int>(), e.at(1).get<int>(), scalar_from_json(f, e.at(2)));
    return b.build();
}

inline std::string pair_key(const std::string& a, const std::string& b) { return a + "|" + b; }
inline std::string triple_key(const std::string& a, const std::string& b, const std::string& c) {
    return a + "|" + b + "|" + c;
}
inline std::vector<std::string> split_key(const std::string& key) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= key.size(); ++i)
        if (i == key.size() || key[i] == '|') {
            parts.push_back(key.substr(start, i - start));
            start = i + 1;
        }
    return parts;
}

// ---------------------------------------------------------------------------
// categories

template <class F>
json vcategory_to_json(const VCategory<F>& a) {
    const int n = a.n();
    json hom = json::object(), ids = json::object(), comp = json::array();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) hom[pair_key(a.objects[x], a.objects[y])] = a.hd(x, y);
    for (int x = 0; x < n; ++x) {
        json v = json::array();
        for (int i = 0; i < a.hd(x, x); ++i) v.push_back(scalar_to_json(a.field, a.id_of(x).at(i, 0)));
        ids[a.objects[x]] = v;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                int dxy = a.hd(x, y);
                a.comp_mat(x, y, z).for_each_nonzero([&](int k, int col, const typename F::Elem& v) {
                    comp.push_back(json::array({a.objects[x], a.objects[y], a.objects[z], col % dxy, col / dxy, k,
                                                scalar_to_json(a.field, v)}));
                });
            }
    json out{{"field", field_spec_of(a.field).to_string()},
             {"objects", a.objects},
             {"hom", hom},
             {"comp", comp},
             {"ids", ids}};
    if (a.labels) {
        json names = json::object(), inv = json::object();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const auto& nm = a.labels->names[x * n + y];
                if (!nm.empty()) {
                    names[pair_key(a.objects[x], a.objects[y])] = nm;
                    inv[pair_key(a.objects[x], a.objects[y])] = a.labels->inv[x * n + y];
                }
            }
        out["groupoid"] = json{{"names", names}, {"inv", inv}};
    }
    return out;
}

template <class F>
VCategory<F> vcategory_from_json(F f, const json& j) {
    VCategory<F> a;
    a.field = f;
    a.objects = j.at("objects").get<std::vector<std::string>>();
    const int n = a.n();
    a.homdim.assign(n * n, 0);
    for (auto it = j.at("hom").begin(); it != j.at("hom").end(); ++it) {
        auto parts = split_key(it.key());
        a.homdim[a.obj_index(parts[0]) * n + a.obj_index(parts[1])] = it.value().get<int>();
    }
    std::vector<typename Mat<F>::Builder> builders;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                builders.emplace_back(f, a.hd(x, z), a.hd(y, z) * a.hd(x, y));
    for (const auto& e : j.at("comp")) {
        int x = a.obj_index(e.at(0).get<std::string>());
        int y = a.obj_index(e.at(1).get<std::string>());
        int z = a.obj_index(e.at(2).get<std::string>());
        int i = e.at(3).get<int>(), jj = e.at(4).get<int>(), k = e.at(5).get<int>();
        builders[(x * n + y) * n + z].set(k, jj * a.hd(x, y) + i, scalar_from_json(f, e.at(6)));
    }
    for (auto& b : builders) a.comp.push_back(b.build());
    for (int x = 0; x < n; ++x) {
        typename Mat<F>::Builder b(f, a.hd(x, x), 1);
        const json& v = j.at("ids").at(a.objects[x]);
        for (int i = 0; i < static_cast<int>(v.size()); ++i) b.set(i, 0, scalar_from_json(f, v.at(i)));
        a.idvec.push_back(b.build());
    }
    if (j.contains("groupoid")) {
        GroupoidLabels lab;
        lab.names.resize(n * n);
        lab.inv.resize(n * n);
        const json& g = j.at("groupoid");
        for (auto it = g.at("names").begin(); it != g.at("names").end(); ++it) {
            auto parts = split_key(it.key());
            lab.names[a.obj_index(parts[0]) * n + a.obj_index(parts[1])] = it.value().get<std::vector<std::string>>();
        }
        for (auto it = g.at("inv").begin(); it != g.at("inv").end(); ++it) {
            auto parts = split_key(it.key());
            lab.inv[a.obj_index(parts[0]) * n + a.obj_index(parts[1])] = it.value().get<std::vector<int>>();
        }
        a.labels = std::move(lab);
    }
    return a;
}

inline json groupoid_to_json(const GroupoidSpec& g) {
    const int n = g.n();
    json hom = json::object(), comp = json::array(), inv = json::object(), ids = json::object();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (!g.hom[x * n + y].empty()) {
                hom[pair_key(g.objects[x], g.objects[y])] = g.hom[x * n + y];
                inv[pair_key(g.objects[x], g.objects[y])] = g.inv[x * n + y];
            }
    for (int x = 0; x < n; ++x) ids[g.objects[x]] = g.ids[x];
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int jj = 0; jj < g.hsize(y, z); ++jj)
                    for (int i = 0; i < g.hsize(x, y); ++i)
                        comp.push_back(json::array(
                            {g.objects[x], g.objects[y], g.objects[z], i, jj, g.compose(x, y, z, i, jj)}));
    return json{{"objects", g.objects}, {"hom", hom}, {"comp", comp}, {"ids", ids}, {"inv", inv}};
}

inline GroupoidSpec groupoid_from_json(const json& j) {
    GroupoidSpec g;
    g.objects = j.at("objects").get<std::vector<std::string>>();
    const int n = g.n();
    g.hom.resize(n * n);
    g.inv.resize(n * n);
    g.comp.resize(n * n * n);
    g.ids.resize(n);
    auto oi = [&](const std::string& id) {
        for (int i = 0; i < n; ++i)
            if (g.objects[i] == id) return i;
        throw std::invalid_argument("groupoid: unknown object " + id);
    };
    for (auto it = j.at("hom").begin(); it != j.at("hom").end(); ++it) {
        auto parts = split_key(it.key());
        g.hom[oi(parts[0]) * n + oi(parts[1])] = it.value().get<std::vector<std::string>>();
    }
    for (auto it = j.at("inv").begin(); it != j.at("inv").end(); ++it) {
        auto parts = split_key(it.key());
        g.inv[oi(parts[0]) * n + oi(parts[1])] = it.value().get<std::vector<int>>();
    }
    for (auto it = j.at("ids").begin(); it != j.at("ids").end(); ++it) g.ids[oi(it.key())] = it.value().get<int>();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                g.comp[(x * n + y) * n + z].assign(g.hsize(y, z) * g.hsize(x, y), -1);
    for (const auto& e : j.at("comp")) {
        int x = oi(e.at(0).get<std::string>()), y = oi(e.at(1).get<std::string>()), z = oi(e.at(2).get<std::string>());
        g.comp[(x * n + y) * n + z][e.at(4).get<int>() * g.hsize(x, y) + e.at(3).get<int>()] = e.at(5).get<int>();
    }
    return g;
}

// ---------------------------------------------------------------------------
// pairings and functors

template <class F>
json pairing_to_json(const VCategory<F>& a, const PairingIso<F>& p) {
    json phi = json::object();
    const int n = a.n();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) phi[pair_key(a.objects[x], a.objects[y])] = mat_to_json(p.at(x, y, n));
    return json{{"phi", phi}};
}

template <class F>
PairingIso<F> pairing_from_json(const VCategory<F>& a, const json& j) {
    const int n = a.n();
    PairingIso<F> p;
    p.phi.assign(n * n, Mat<F>::zero(a.field, 0, 0));
    for (auto it = j.at("phi").begin(); it != j.at("phi").end(); ++it) {
        auto parts = split_key(it.key());
        p.phi[a.obj_index(parts[0]) * n + a.obj_index(parts[1])] = mat_from_json(a.field, it.value());
    }
    return p;
}

inline std::string slot_act_key(int slot, int arity) {
    if (arity == 1) return "act";
    if (arity == 2) return slot == 0 ? "lact" : "ract";
    return "act" + std::to_string(slot + 1);
}

template <class F>
json functor_to_json(const FunctorData<F>& fd) {
    const VCategory<F>& a = *fd.cat;
    const int n = a.n(), k = fd.arity();
    json var = json::array();
    for (Variance v : fd.var) var.push_back(v == Variance::Co ? "co" : "contra");
    json dims = json::object();
    for (int ix = 0; ix < fd.tuple_count(); ++ix) {
        std::vector<int> t = fd.tuple_of(ix);
        std::string key;
        for (int i = 0; i < k; ++i) key += (i ? "|" : "") + a.objects[t[i]];
        dims[key] = fd.dims[ix];
    }
    json out{{"variance", var}, {"dims", dims}};
    for (int s = 0; s < k; ++s) {
        json entries = json::array();
        for (int ix = 0; ix < fd.tuple_count(); ++ix) {
            std::vector<int> t = fd.tuple_of(ix);
            for (int target = 0; target < n; ++target) {
                int d = fd.dims[ix];
                if (d == 0) continue;
                fd.action_tensor(s, ix, target).for_each_nonzero([&](int row, int col,
                                                                     const typename F::Elem& v) {
                    json e = json::array();
                    for (int i = 0; i < k; ++i) e.push_back(a.objects[t[i]]);
                    e.push_back(a.objects[target]);
                    e.push_back(col / d);  // morphism basis
                    e.push_back(col % d);  // source basis
                    e.push_back(row);      // target basis
                    e.push_back(scalar_to_json(a.field, v));
                    entries.push_back(e);
                });
            }
        }
        out[slot_act_key(s, k)] = entries;
    }
    return out;
}

template <class F>
FunctorData<F> functor_from_json(VCatPtr<F> cat, const json& j) {
    const VCategory<F>& a = *cat;
    const F& f = a.field;
    const int n = a.n();
    std::vector<Variance> var;
    for (const auto& v : j.at("variance")) var.push_back(v.get<std::string>() == "co" ? Variance::Co : Variance::Contra);
    const int k = static_cast<int>(var.size());
    int tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= n;
    std::vector<int> dims(tuples, 0);
    for (auto it = j.at("dims").begin(); it != j.at("dims").end(); ++it) {
        auto parts = split_key(it.key());
        int ix = 0;
        for (const auto& p : parts) ix = ix * n + a.obj_index(p);
        dims[ix] = it.value().get<int>();
    }
    FunctorData<F> fd;
    fd.cat = cat;
    fd.var = var;
    fd.dims = dims;
    fd.act.assign(k, {});
    std::vector<int> t(k, 0);
    for (int s = 0; s < k; ++s) {
        std::vector<typename Mat<F>::Builder> builders;
        std::vector<int> u(k, 0);
        for (int ix = 0; ix < tuples; ++ix) {
            for (int target = 0; target < n; ++target) {
                std::vector<int> u2 = u;
                u2[s] = target;
                int ix2 = 0;
                for (int v : u2) ix2 = ix2 * n + v;
                int hom = var[s] == Variance::Contra ? a.hd(target, u[s]) : a.hd(u[s], target);
                builders.emplace_back(f, dims[ix2], hom * dims[ix]);
            }
            int i = k - 1;
            while (i >= 0 && ++u[i] == n) u[i--] = 0;
        }
        if (j.contains(slot_act_key(s, k)))
            for (const auto& e : j.at(slot_act_key(s, k))) {
                int ix = 0;
                for (int i = 0; i < k; ++i) ix = ix * n + a.obj_index(e.at(i).get<std::string>());
                int target = a.obj_index(e.at(k).get<std::string>());
                int m = e.at(k + 1).get<int>(), src = e.at(k + 2).get<int>(), dst = e.at(k + 3).get<int>();
                builders[static_cast<std::size_t>(ix) * n + target].set(dst, m * dims[ix] + src,
                                                                        scalar_from_json(f, e.at(k + 4)));
            }
        fd.act[s].reserve(builders.size());
        for (auto& b : builders) fd.act[s].push_back(b.build());
    }
    return fd;
}

// ---------------------------------------------------------------------------
// promonoidal structures and friends

template <class F>
json promonoidal_to_json(const Promonoidal<F>& pm) {
    const VCategory<F>& a = *pm.cat;
    const int n = a.n();
    json unit = json::object();
    for (int w = 0; w < n; ++w)
        for (int x = 0; x < n; ++x) unit[pair_key(a.objects[w], a.objects[x])] = mat_to_json(pm.unit_iso[w * n + x]);
    json out{{"category", vcategory_to_json(a)},
             {"p", functor_to_json(pm.p)},
             {"j", functor_to_json(pm.j)},
             {"unit_iso", unit}};
    if (!pm.symmetry_note.empty()) out["symmetry_note"] = pm.symmetry_note;
    return out;
}

template <class F>
Promonoidal<F> promonoidal_from_json(F f, const json& j) {
    Promonoidal<F> pm;
    pm.cat = std::make_shared<const VCategory<F>>(vcategory_from_json(f, j.at("category")));
    pm.p = functor_from_json(pm.cat, j.at("p"));
    pm.j = functor_from_json(pm.cat, j.at("j"));
    const int n = pm.cat->n();
    pm.unit_iso.assign(n * n, Mat<F>::zero(f, 0, 0));
    for (auto it = j.at("unit_iso").begin(); it != j.at("unit_iso").end(); ++it) {
        auto parts = split_key(it.key());
        pm.unit_iso[pm.cat->obj_index(parts[0]) * n + pm.cat->obj_index(parts[1])] = mat_from_json(f, it.value());
    }
    if (j.contains("symmetry_note")) pm.symmetry_note = j.at("symmetry_note").get<std::string>();
    return pm;
}

template <class F>
json star_to_json(const VCategory<F>& a, const StarIso<F>& s) {
    const int n = a.n();
    json out = json::object();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                out[triple_key(a.objects[x], a.objects[y], a.objects[z])] =
                    mat_to_json(s.s[(x * n + y) * n + z]);
    return json{{"s", out}};
}

template <class F>
StarIso<F> star_from_json(const VCategory<F>& a, const json& j) {
    const int n = a.n();
    StarIso<F> s;
    s.s.assign(n * n * n, Mat<F>::zero(a.field, 0, 0));
    for (auto it = j.at("s").begin(); it != j.at("s").end(); ++it) {
        auto parts = split_key(it.key());
        s.s[(a.obj_index(parts[0]) * n + a.obj_index(parts[1])) * n + a.obj_index(parts[2])] =
            mat_from_json(a.field, it.value());
    }
    return s;
}

template <class F>
json antipode_to_json(const VCategory<F>& a, const AntipodeData<F>& ad) {
    const int n = a.n();
    json sobj = json::object(), shom = json::object(), sigma = json::object(), d = json::object(), c = json::object();
    for (int x = 0; x < n; ++x) sobj[a.objects[x]] = a.objects[ad.s_obj[x]];
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) shom[pair_key(a.objects[x], a.objects[y])] = mat_to_json(ad.s_hom[x * n + y]);
    for (int x = 0; x < n; ++x) {
        json v = json::array();
        for (int i = 0; i < ad.sigma[x].rows(); ++i) v.push_back(scalar_to_json(a.field, ad.sigma[x].at(i, 0)));
        sigma[a.objects[x]] = v;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                d[triple_key(a.objects[x], a.objects[y], a.objects[z])] = mat_to_json(ad.d[(x * n + y) * n + z]);
                c[triple_key(a.objects[x], a.objects[y], a.objects[z])] = mat_to_json(ad.c[(x * n + y) * n + z]);
            }
    return json{{"S_obj", sobj}, {"S_hom", shom}, {"sigma", sigma}, {"d", d}, {"c", c}};
}

template <class F>
AntipodeData<F> antipode_from_json(const VCategory<F>& a, const json& j) {
    const int n = a.n();
    AntipodeData<F> ad;
    ad.s_obj.resize(n);
    for (auto it = j.at("S_obj").begin(); it != j.at("S_obj").end(); ++it)
        ad.s_obj[a.obj_index(it.key())] = a.obj_index(it.value().get<std::string>());
    ad.s_hom.assign(n * n, Mat<F>::zero(a.field, 0, 0));
    for (auto it = j.at("S_hom").begin(); it != j.at("S_hom").end(); ++it) {
        auto parts = split_key(it.key());
        ad.s_hom[a.obj_index(parts[0]) * n + a.obj_index(parts[1])] = mat_from_json(a.field, it.value());
    }
    ad.sigma.assign(n, Mat<F>::zero(a.field, 0, 0));
    if (j.contains("sigma"))
        for (auto it = j.at("sigma").begin(); it != j.at("sigma").end(); ++it) {
            int x = a.obj_index(it.key());
            typename Mat<F>::Builder b(a.field, static_cast<int>(it.value().size()), 1);
            for (int i = 0; i < static_cast<int>(it.value().size()); ++i)
                b.set(i, 0, scalar_from_json(a.field, it.value().at(i)));
            ad.sigma[x] = b.build();
        }
    ad.d.assign(n * n * n, Mat<F>::zero(a.field, 0, 0));
    ad.c.assign(n * n * n, Mat<F>::zero(a.field, 0, 0));
    for (auto it = j.at("d").begin(); it != j.at("d").end(); ++it) {
        auto parts = split_key(it.key());
        ad.d[(a.obj_index(parts[0]) * n + a.obj_index(parts[1])) * n + a.obj_index(parts[2])] =
            mat_from_json(a.field, it.value());
    }
    for (auto it = j.at("c").begin(); it != j.at("c").end(); ++it) {
        auto parts = split_key(it.key());
        ad.c[(a.obj_index(parts[0]) * n + a.obj_index(parts[1])) * n + a.obj_index(parts[2])] =
            mat_from_json(a.field, it.value());
    }
    return ad;
}

// ---------------------------------------------------------------------------
// reports

template <class F>
json fuzz_report_to_json(const FuzzReport<F>& r, bool emit_witness) {
    json instances = json::array();
    for (const auto& rec : r.instances)
        instances.push_back(json{{"objects", rec.objects},
                                 {"group_order", rec.group_order},
                                 {"t_dim_total", rec.t_dim_total},
                                 {"interchange_iso", rec.interchange_iso},
                                 {"alpha_iso", rec.alpha_iso},
                                 {"alpha_dinatural", rec.alpha_dinatural},
                                 {"corruption_detected", rec.corruption_detected},
                                 {"corruption_detector", rec.corruption_detector}});
    json violations = json::array();
    for (const auto& v : r.violations) {
        json entry{{"kind", v.kind}, {"instance", v.instance_index}};
        entry["reproducer"] = json{{"category", vcategory_to_json(*v.shrunk.cat)},
                                   {"bifunctor", functor_to_json(v.shrunk.t)},
                                   {"pairing", pairing_to_json(*v.shrunk.cat, v.shrunk.phi)}};
        violations.push_back(entry);
    }
    (void)emit_witness;
    return json{{"seed", r.seed},
                {"count", r.count},
                {"field", r.field},
                {"bounds", json{{"max_objects", r.bounds.max_objects}, {"max_hom", r.bounds.max_hom}}},
                {"instances", instances},
                {"violations", violations},
                {"clean", r.clean()}};
}

}  // namespace coendcalc
