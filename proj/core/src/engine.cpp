#include "abdkit/engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "abdkit/lattice.hpp"
#include "abdkit/oracle.hpp"
#include "abdkit/reductions.hpp"
#include "abdkit/solvers.hpp"
#include "abdkit/wsat.hpp"

namespace abdkit {

namespace {

std::optional<Explanation> run_wsat_route(const AbductionInstance& inst, Variant variant,
                                          const LatticeProfile& prof) {
    if (variant != Variant::exact) throw std::invalid_argument("reduce_wsat is exact-only");
    WsatInstance w;
    if (prof.in_is12())
        w = reduce_essneg_eq_to_wsat(inst);
    else if (prof.shapes_im)
        w = reduce_im_eq_to_wsat(inst);
    else if (prof.in_is10())
        w = reduce_is10_eq_to_wsat(inst);
    else if (prof.in_iv2())
        w = reduce_iv2_eq_to_wsat(inst);
    else
        throw std::invalid_argument("no reduction route for this language");
    auto theta = wsat_bruteforce(w);
    if (!theta) return std::nullopt;
    // Recover the explanation: selected variables plus, on the essentially
    // negative route, the forced core.
    Explanation e;
    for (const auto& [var, value] : *theta)
        if (value) e.push_back(var);
    if (prof.in_is12()) e = set_union(sorted_unique(e), essneg_forced_core(inst));
    return sorted_unique(std::move(e));
}

std::optional<Explanation> run_named(const AbductionInstance& inst, Variant variant,
                                     const std::string& engine, const LatticeProfile& prof) {
    if (engine == "oracle") return oracle_abduce(inst, variant);
    if (engine == "solve_2affine") return solve_2affine(inst, variant);
    if (engine == "solve_ess_positive") {
        if (variant == Variant::plain) return solve_ess_positive(abd_to_le(inst), Variant::at_most);
        return solve_ess_positive(inst, variant);
    }
    if (engine == "solve_ess_negative_le") {
        if (variant == Variant::exact)
            throw std::invalid_argument("solve_ess_negative_le handles plain and at-most");
        return solve_ess_negative_le(variant == Variant::plain ? abd_to_le(inst) : inst);
    }
    if (engine == "solve_definite_horn_plain") {
        if (variant != Variant::plain)
            throw std::invalid_argument("solve_definite_horn_plain is plain-only");
        return solve_definite_horn_plain(inst);
    }
    if (engine == "solve_by_H_enumeration") return solve_by_H_enumeration(inst, variant);
    if (engine == "solve_by_size_enumeration") return solve_by_size_enumeration(inst, variant);
    if (engine == "solve_M_setcover") {
        if (variant == Variant::plain) return solve_M_setcover(abd_to_le(inst), Variant::at_most);
        if (variant == Variant::exact) {
            // exact sizing over dualHorn: pad above the minimum cover
            SetCoverAnalysis a = analyze_m_setcover(inst);
            const int s = inst.required_size(variant);
            if (!a.feasible || !a.min_witness) return std::nullopt;
            if (s < a.min_cover || s > static_cast<int>(a.usable_hypotheses.size()))
                return std::nullopt;
            Explanation e = *a.min_witness;
            for (const std::string& h : a.usable_hypotheses) {
                if (static_cast<int>(e.size()) == s) break;
                if (!sorted_contains(e, h)) e.insert(std::lower_bound(e.begin(), e.end(), h), h);
            }
            return e;
        }
        return solve_M_setcover(inst, variant);
    }
    if (engine == "reduce_wsat") return run_wsat_route(inst, variant, prof);
    throw std::invalid_argument("unknown engine " + engine);
}

bool oracle_in_reach(const AbductionInstance& inst) {
    const int h = static_cast<int>(inst.hypotheses.size());
    const int v = static_cast<int>(inst.variables.size());
    if (v > 22) return false;
    return (std::uint64_t{1} << h) <= oracle_limit() / (std::uint64_t{1} << v);
}

}  // namespace

std::vector<std::string> known_engines() {
    return {"oracle",
            "solve_2affine",
            "solve_ess_positive",
            "solve_ess_negative_le",
            "solve_definite_horn_plain",
            "solve_by_H_enumeration",
            "solve_by_size_enumeration",
            "solve_M_setcover",
            "reduce_wsat"};
}

std::vector<std::string> applicable_engines(const AbductionInstance& inst, Variant variant) {
    LatticeProfile prof = lattice_profile(inst.language);
    std::vector<std::string> out;
    if (oracle_in_reach(inst)) out.push_back("oracle");
    if (prof.in_id1()) out.push_back("solve_2affine");
    if (prof.in_is02()) out.push_back("solve_ess_positive");
    if (prof.in_is12() && variant != Variant::exact) out.push_back("solve_ess_negative_le");
    if (prof.in_ie1() && variant == Variant::plain) out.push_back("solve_definite_horn_plain");
    if (prof.schaefer()) {
        out.push_back("solve_by_H_enumeration");
        if (variant != Variant::plain) out.push_back("solve_by_size_enumeration");
    }
    if (prof.in_iv2() && inst.manifestations.size() <= 16) out.push_back("solve_M_setcover");
    if (variant == Variant::exact &&
        (prof.in_is12() || prof.shapes_im || prof.in_is10() || prof.in_iv2()))
        out.push_back("reduce_wsat");
    return out;
}

SolveResult solve(const AbductionInstance& inst, Variant variant, const std::string& engine,
                  Param param) {
    if (variant != Variant::plain) (void)inst.required_size(variant);
    LatticeProfile prof = lattice_profile(inst.language);
    SolveResult result;
    result.verdict = (param == Param::E && variant == Variant::plain)
                         ? Verdict{VerdictLabel::unclassified, "plain variant has no |E|"}
                         : classify(prof, variant, param);

    if (engine != "auto") {
        result.engine = engine;
        auto witness = run_named(inst, variant, engine, prof);
        result.yes = witness.has_value();
        result.witness = std::move(witness);
        return result;
    }

    auto finish = [&](const char* name, std::optional<Explanation> witness) {
        result.engine = name;
        result.yes = witness.has_value();
        result.witness = std::move(witness);
        return result;
    };

    // specialized polynomial solvers first
    if (prof.in_id1()) return finish("solve_2affine", run_named(inst, variant, "solve_2affine", prof));
    if (prof.in_is02())
        return finish("solve_ess_positive", run_named(inst, variant, "solve_ess_positive", prof));
    if (prof.in_is12() && variant != Variant::exact)
        return finish("solve_ess_negative_le",
                      run_named(inst, variant, "solve_ess_negative_le", prof));
    if (prof.in_ie1() && variant == Variant::plain)
        return finish("solve_definite_horn_plain",
                      run_named(inst, variant, "solve_definite_horn_plain", prof));

    // parameter-aware solvers
    if (prof.in_iv2() && inst.manifestations.size() <= 16)
        return finish("solve_M_setcover", run_named(inst, variant, "solve_M_setcover", prof));
    if (prof.schaefer()) {
        if (variant != Variant::plain &&
            inst.required_size(variant) * 2 <= static_cast<int>(inst.hypotheses.size()))
            return finish("solve_by_size_enumeration",
                          run_named(inst, variant, "solve_by_size_enumeration", prof));
        if (inst.hypotheses.size() <= 22)
            return finish("solve_by_H_enumeration",
                          run_named(inst, variant, "solve_by_H_enumeration", prof));
    }

    // reduction route, then the oracle
    if (variant == Variant::exact && prof.in_is12())
        return finish("reduce_wsat", run_named(inst, variant, "reduce_wsat", prof));
    if (!oracle_in_reach(inst))
        throw oracle_limit_error("instance too large for the oracle fallback; raise "
                                 "ABDKIT_ORACLE_LIMIT");
    return finish("oracle", oracle_abduce(inst, variant));
}

bool VerifyReport::agree() const {
    for (const VerifyEntry& e : entries) {
        if (e.yes != entries.front().yes) return false;
        if (!e.witness_valid) return false;
    }
    return true;
}

std::string VerifyReport::summary() const {
    std::ostringstream out;
    for (const VerifyEntry& e : entries)
        out << e.engine << ": " << (e.yes ? "yes" : "no")
            << (e.witness_valid ? "" : " (invalid witness)") << '\n';
    out << (agree() ? "all engines agree" : "DISAGREEMENT detected") << '\n';
    return out.str();
}

VerifyReport verify(const AbductionInstance& inst, Variant variant) {
    VerifyReport report;
    for (const std::string& engine : applicable_engines(inst, variant)) {
        VerifyEntry entry;
        entry.engine = engine;
        auto witness = run_named(inst, variant, engine,
                                 lattice_profile(inst.language));
        entry.yes = witness.has_value();
        if (witness) {
            // the witness must be a consistent, entailing subset of H
            bool subset = true;
            for (const std::string& h : *witness)
                if (!inst.is_hypothesis(h)) subset = false;
            bool sat_with = true, entails = true;
            {
                ModelTable table(inst.language, inst.kb, inst.variables);
                ModelTable restricted = table.restrict_true(*witness);
                sat_with = restricted.any();
                for (const std::string& m : inst.manifestations)
                    if (!restricted.all_true(m)) entails = false;
            }
            entry.witness_valid = subset && sat_with && entails;
            if (variant == Variant::exact)
                entry.witness_valid &= static_cast<int>(witness->size()) ==
                                       inst.required_size(variant);
            if (variant == Variant::at_most)
                entry.witness_valid &= static_cast<int>(witness->size()) <=
                                       inst.required_size(variant);
        }
        report.add(std::move(entry));
    }
    return report;
}

}  // namespace abdkit
