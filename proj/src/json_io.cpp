#include "permuto/json_io.hpp"

#include <sstream>

namespace permuto {

json to_json(const OrderedPartition& a) {
    return json{{"n", a.n}, {"blocks", a.blocks}};
}

OrderedPartition partition_from_json(const json& j) {
    auto blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
    int n = 0;
    if (j.contains("n")) {
        n = j.at("n").get<int>();
    } else {
        for (const auto& b : blocks) n += static_cast<int>(b.size());
    }
    return OrderedPartition(n, std::move(blocks));
}

json to_json(const BasedInjection& phi) {
    return json{{"k", phi.k}, {"l", phi.l}, {"images", phi.images}};
}

BasedInjection injection_from_json(const json& j) {
    return BasedInjection(j.at("k").get<int>(), j.at("l").get<int>(),
                          j.at("images").get<std::vector<int>>());
}

json to_json(const CoendClass& cls) {
    if (cls.is_basepoint()) return json{{"cell", nullptr}, {"labels", json::array()}};
    return json{{"cell", json{{"blocks", cls.cell.blocks}}}, {"labels", cls.labels}};
}

json to_json(const ChainComplex& c) {
    json boundaries = json::array();
    for (int d = 1; d <= c.top_degree(); ++d) {
        json entries = json::array();
        for (const auto& [r, col, v] : c.boundary[d].entries)
            entries.push_back(json::array({r, col, v}));
        boundaries.push_back(json{{"d", d}, {"entries", entries}});
    }
    return json{{"basis", c.basis}, {"boundaries", boundaries}};
}

json to_json(const HomologyResult& h) {
    json torsion = json::array();
    for (const auto& t : h.torsion) {
        json factors = json::array();
        for (const auto& f : t) factors.push_back(f.str());
        torsion.push_back(factors);
    }
    return json{{"betti", h.betti}, {"torsion", torsion}};
}

json to_json(const ShuffleCheckReport& r) {
    json comps = json::array();
    for (const auto& c : r.components)
        comps.push_back(json{{"j", c.j},
                             {"binomial", c.binomial_count},
                             {"boundary_coeff", c.boundary_coeff},
                             {"signed_shuffle_sum", c.signed_shuffle_sum},
                             {"mod2_match", c.mod2_match},
                             {"signed_match", c.signed_match},
                             {"relative_sign", c.relative_sign}});
    return json{{"k", r.k},
                {"components", comps},
                {"all_mod2", r.all_mod2()},
                {"all_signed", r.all_signed()}};
}

json to_json(const LadderReport& r) {
    return json{{"composite_zero", r.composite_zero}, {"all_zero", r.all_zero()}};
}

json to_json(const TopCollapse& t) {
    return json{{"top_degree", t.top_degree},
                {"image_basis", t.image_basis},
                {"section_identity", t.section_identity}};
}

json to_json(const SplitTensorElement& e) {
    json terms = json::array();
    for (const auto& [pair, coef] : e.terms)
        terms.push_back(json{{"left", pair.first}, {"right", pair.second}, {"coef", coef}});
    return terms;
}

json to_json(const LieRankResult& r) {
    json factors = json::array();
    for (const auto& f : r.invariant_factors) factors.push_back(f.str());
    return json{{"rank", r.rank},
                {"direct_summand", r.direct_summand},
                {"invariant_factors", factors}};
}

json to_json(const FreeProductWord& w) {
    json letters = json::array();
    for (const auto& [comp, power] : w.letters)
        letters.push_back(json{{"component", comp}, {"power", power}});
    return letters;
}

FreeProductWord word_from_json(const json& j, int level) {
    Phi0Instance inst(0);
    auto w = inst.identity(level);
    for (const auto& letter : j)
        w = inst.multiply(w, inst.generator(level, letter.at("component").get<int>(),
                                            letter.at("power").get<long long>()));
    return w;
}

json to_json(const TruncatedMagnusWord& p) {
    json terms = json::array();
    for (const auto& [w, v] : p.coeffs) {
        if (v == 0) continue;
        terms.push_back(json{{"monomial", w}, {"coef", v}});
    }
    return json{{"class", p.truncation}, {"terms", terms}};
}

json to_json(const JHReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"name", c.name},
                              {"passed", c.passed},
                              {"counterexample", c.counterexample}});
    return json{{"checks", checks}, {"all_passed", r.all_passed()}};
}

json to_json(const CompositeReport& r) {
    return json{{"hypothesis_ok", r.hypothesis_ok},
                {"extension_trivial", r.extension_trivial},
                {"failures", r.failures},
                {"audited_per_level", r.audited_per_level}};
}

json to_json(const ExactnessReport& r) {
    return json{{"injective", r.injective},
                {"surjective", r.surjective},
                {"coequalizer", r.coequalizer},
                {"orbit_classes_k", r.orbit_classes_k},
                {"orbit_classes_k1", r.orbit_classes_k1},
                {"coend_classes", r.coend_classes},
                {"all", r.all()},
                {"detail", r.detail}};
}

json to_json(const MorphismReport& r) {
    json image_sizes = json::array();
    for (const auto& level : r.image) image_sizes.push_back(level.size());
    return json{{"complete", r.complete},
                {"order_preserving", r.order_preserving},
                {"natural", r.natural},
                {"idempotent", r.idempotent},
                {"is_morphism", r.is_morphism()},
                {"counterexample", r.counterexample},
                {"image_sizes", image_sizes}};
}

}  // namespace permuto
