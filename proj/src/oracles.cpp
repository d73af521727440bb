#include "symstrat/oracles.hpp"

namespace symstrat {

std::vector<BigInt> ordered_config_betti(int n) {
    if (n < 2 || n > 6) throw Error(errc::bad_input, "ordered_config_betti: need 2 <= n <= 6");
    std::vector<BigInt> poly{1};
    for (int i = 1; i <= n - 1; ++i) {
        std::vector<BigInt> next(poly.size() + 1);
        for (size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k];
            next[k + 1] += BigInt(i) * poly[k];
        }
        poly = std::move(next);
    }
    return poly;
}

HomologyGroup braid_abelianization(int n) {
    if (n < 2) throw Error(errc::bad_input, "braid_abelianization: need n >= 2");
    int gens = n - 1;
    // one column per generator pair i < j: the braid relation abelianizes to
    // sigma_i - sigma_{i+1}, the commutation relations to zero columns
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < gens; ++i)
        for (int j = i + 1; j < gens; ++j) pairs.emplace_back(i, j);
    SparseMat relations(gens, static_cast<int>(pairs.size()));
    for (size_t r = 0; r < pairs.size(); ++r) {
        auto [i, j] = pairs[r];
        if (j == i + 1) {
            relations.add(i, static_cast<int>(r), 1);
            relations.add(j, static_cast<int>(r), -1);
        }
    }
    relations.finalize();
    SmithResult snf = smith_normal_form(relations);
    HomologyGroup g;
    g.betti = gens - snf.rank();
    g.torsion = snf.torsion();
    return g;
}

std::vector<OracleRecord> small_space_table() {
    std::vector<OracleRecord> table;
    {
        OracleRecord r;
        r.space = "Conf_1(R^2)";
        r.colours = ColourVector({1});
        r.expected = {{0, HomologyGroup{1, {}}}};
        r.provenance = "contractible: a single point in the plane";
        table.push_back(std::move(r));
    }
    {
        OracleRecord r;
        r.space = "Conf_2(R^2)";
        r.colours = ColourVector({2});
        r.expected = {{0, HomologyGroup{1, {}}}, {1, HomologyGroup{1, {}}}};
        r.provenance = "deformation retracts to a circle (centre of mass, separation, direction line)";
        table.push_back(std::move(r));
    }
    {
        OracleRecord r;
        r.space = "PConf_2(R^2)";
        r.colours = ColourVector({1, 1});
        r.expected = {{0, HomologyGroup{1, {}}}, {1, HomologyGroup{1, {}}}};
        r.provenance = "S^1 x R^3 by the same retraction without the antipodal quotient";
        table.push_back(std::move(r));
    }
    for (int n = 2; n <= 6; ++n) {
        OracleRecord r;
        r.space = "H_1(Conf_" + std::to_string(n) + "(R^2))";
        r.colours = ColourVector({n});
        r.expected = {{1, braid_abelianization(n)}};
        r.full = false;
        r.provenance = "abelianized braid presentation on " + std::to_string(n - 1) +
                       " generators, reduced by Smith normal form";
        table.push_back(std::move(r));
    }
    return table;
}

} // namespace symstrat
