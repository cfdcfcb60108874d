// Walks the quartic K3 in P^3 through every stage of the library and prints
// the intermediate series.

#include <iostream>

#include "mirrorgen/mirrorgen.hpp"

using namespace mirrorgen;

int main(int argc, char **argv)
{
    const int order = argc > 1 ? std::stoi(argv[1]) : 12;
    auto g = builtin_geometry("p3_quartic");
    g.set_order(order);

    const auto I = relative_I(g);
    const auto n = split_and_normalize(I);
    std::cout << "I_1 is the unit: " << std::boolalpha << n.unit_I1 << "\n";
    for (const auto &[beta, c] : I.series.terms()) {
        std::cout << "  I at y^" << beta[0] << ": " << c.str() << "\n";
    }

    const auto ex = extract_g(n.tau.series);
    std::cout << "g(y)  = " << to_string(ex.g) << "\n";

    const auto change = invert_mirror_map(ex.g, g.m);
    std::cout << "y(q)  = " << to_string(change.y_of_q[0]) << "\n";

    const auto W = proper_potential_from(ex.g, g.m);
    std::cout << "W     = " << W.W.str() << "\n";

    const auto pi = classical_period(W);
    const auto G = quantum_period(g);
    std::cout << "G     = " << G.str() << "\n";
    std::cout << "G_hat = " << regularize(G).str() << "\n";
    std::cout << "pi_W  = " << pi.str() << "\n";

    const auto report = verify_period_theorem(g);
    std::cout << "pi_W == G_hat: " << report.all_match << "\n";
    return report.all_match ? 0 : 1;
}
