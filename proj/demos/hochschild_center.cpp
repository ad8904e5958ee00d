// Computes HH_0 and the center of k[S3] as a coend and an end of the hom
// bifunctor, cross-checks against brute-force oracles, and certifies the
// induced isomorphism H/[H,H] -> Z(H) coming from the delta pairing.

#include <iostream>

#include "coendcalc/gallery.hpp"

using namespace coendcalc;

int main() {
    Rationals q;
    auto cat = std::make_shared<const VCategory<Rationals>>(group_algebra_category(symmetric3(), q));
    std::cout << "k[S3] over Q, dim " << cat->hd(0, 0) << "\n";

    auto hom = hom_bifunctor(cat);
    auto ce = coend(hom);
    auto en = end(hom);
    std::cout << "coend of hom (H/[H,H]) has dim " << ce.dim() << ", oracle says "
              << oracle_hh0(cat->comp_mat(0, 0, 0), 6) << "\n";
    std::cout << "end of hom (the center) has dim " << en.dim() << ", oracle says "
              << oracle_center(cat->comp_mat(0, 0, 0), 6) << "\n";

    auto phi = delta_pairing(*cat);
    auto la = lemma_alpha(*cat, hom, phi);
    std::cout << "interchange hypothesis: " << (interchange(hom).iso ? "holds" : "fails") << "\n";
    std::cout << "induced map H/[H,H] -> Z(H): rank " << rank(la.induced) << ", "
              << (la.iso ? "an isomorphism" : "not an isomorphism") << "\n";
    std::cout << "witness matrix:\n" << mat_to_json(la.induced).dump(2) << "\n";
    return la.iso ? 0 : 1;
}
