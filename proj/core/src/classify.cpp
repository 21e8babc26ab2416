#include "abdkit/classify.hpp"

#include <stdexcept>

namespace abdkit {

std::string to_string(VerdictLabel label) {
    switch (label) {
        case VerdictLabel::fpt: return "FPT";
        case VerdictLabel::w1_complete: return "W[1]-complete";
        case VerdictLabel::w1_hard: return "W[1]-hard";
        case VerdictLabel::w2_complete: return "W[2]-complete";
        case VerdictLabel::w2_hard: return "W[2]-hard";
        case VerdictLabel::wp_complete: return "W[P]-complete";
        case VerdictLabel::para_np_complete: return "para-NP-complete";
        case VerdictLabel::para_conp_hard: return "para-coNP-hard";
        case VerdictLabel::para_dp_hard: return "para-DP-hard";
        case VerdictLabel::para_sigma2p_hard: return "para-SigmaP2-hard";
        case VerdictLabel::unclassified: return "unclassified";
    }
    return "?";
}

namespace {

Verdict make(VerdictLabel label, const char* source) { return Verdict{label, source}; }

// Parameter |H|: the same trichotomy for all three variants.
Verdict classify_h(const LatticeProfile& p) {
    if (p.covers_in2() || p.covers_ii0())
        return make(VerdictLabel::para_dp_hard,
                    "non-Schaefer language above a 0-valid or complementive-free core: DP-hard "
                    "already at constant |H|");
    if (p.covers_in())
        return make(VerdictLabel::para_conp_hard,
                    "non-Schaefer language: entailment is coNP-hard at constant |H|");
    return make(VerdictLabel::fpt,
                "SAT and IMP are polynomial inside IE2/IV2/ID2/IL2; brute-force the |H|^|E| "
                "candidate sets");
}

Verdict classify_e(const LatticeProfile& p, Variant variant) {
    if (p.covers_in2() || p.covers_ii0())
        return make(VerdictLabel::para_dp_hard,
                    "inherited from the |H| classification at constant parameter");
    if (p.covers_in())
        return make(VerdictLabel::para_conp_hard,
                    "inherited from the |H| classification at constant parameter");
    if (p.covers_ie() && p.in_ie2())
        return make(VerdictLabel::wp_complete,
                    "terms imply atoms: guessing |E| variables with polynomial verification; "
                    "hard already for conjunction-implication clauses");
    if (p.covers_im() && (p.in_id2() || p.in_iv2()))
        return make(VerdictLabel::w2_complete,
                    "implications expressible, language within Krom or dualHorn: equivalent to "
                    "weighted monotone-CNF satisfiability");
    if (p.covers_im() && p.in_is10()) {
        if (variant == Variant::exact)
            return make(VerdictLabel::w2_complete,
                        "implications with bounded negative clauses: the weighted-CNF encoding "
                        "still applies to the exact variant");
        return make(VerdictLabel::w2_hard,
                    "implications expressible: hard for weighted monotone-CNF; membership open "
                    "for the at-most variant");
    }
    if (p.in_id1() || p.in_is02())
        return make(VerdictLabel::fpt, "2-affine and essentially positive instances solve in "
                                       "polynomial time");
    if (p.in_is12()) {
        if (variant == Variant::at_most)
            return make(VerdictLabel::fpt,
                        "essentially negative at-most instances solve in polynomial time via the "
                        "forced core M minus P");
        return make(VerdictLabel::w1_complete,
                    "essentially negative exact sizing is equivalent to weighted "
                    "bounded-width-CNF satisfiability (independent-set flavoured)");
    }
    return make(VerdictLabel::unclassified, "affine gap: no rule covers this position");
}

Verdict classify_m(const LatticeProfile& p, Variant variant) {
    if (p.covers_in2() || p.covers_ii0())
        return make(VerdictLabel::para_sigma2p_hard,
                    "non-Schaefer above a 0-valid or complementive-free core: the constant-|M| "
                    "slice is SigmaP2-hard");
    if (p.covers_in())
        return make(VerdictLabel::para_conp_hard,
                    "non-Schaefer language: entailment is coNP-hard at constant |M|");

    if (variant == Variant::plain) {
        if (p.in_ie2() && !p.flags.zero_valid && !p.flags.one_valid && !p.in_is10())
            return make(VerdictLabel::para_np_complete,
                        "the full Horn co-clone: the constant-|M| slice is NP-complete");
        if (p.covers_is2_11() && p.in_id2())
            return make(VerdictLabel::w1_complete,
                        "width-2 negative clauses with implications inside Krom: equivalent to "
                        "parameterised independent set");
        if (p.covers_is3_11())
            return make(VerdictLabel::w1_hard,
                        "width-3 negative clauses with implications: independent set embeds");
        if (p.in_iv2() || p.in_id1() || p.in_is12() || p.in_ie1())
            return make(VerdictLabel::fpt,
                        "plain abduction is polynomial for dualHorn, 2-affine, essentially "
                        "negative and definite Horn languages");
        return make(VerdictLabel::unclassified, "affine gap: no rule covers this position");
    }

    if (variant == Variant::at_most) {
        if (p.covers_ie() && p.in_ie2())
            return make(VerdictLabel::para_np_complete,
                        "conjunction-implication clauses: vertex cover embeds at |M| = 1");
        if (p.covers_is2_11() && p.in_id2())
            return make(VerdictLabel::w1_complete,
                        "width-2 negative clauses with implications inside Krom: equivalent to "
                        "parameterised independent set");
        if (p.covers_is3_11())
            return make(VerdictLabel::w1_hard,
                        "width-3 negative clauses with implications: independent set embeds");
        if (p.in_iv2() || p.in_id1() || p.in_is12())
            return make(VerdictLabel::fpt,
                        "cover the manifestations: subset dynamic programming over at most "
                        "2^|M| states (dualHorn), forced core (essentially negative), cluster "
                        "counting (2-affine)");
        return make(VerdictLabel::unclassified, "affine gap: no rule covers this position");
    }

    // exact variant
    if ((p.covers_nand2() || p.covers_ie()) && (p.in_ie2() || p.in_id2()))
        return make(VerdictLabel::para_np_complete,
                    "width-2 negative clauses (or conjunction-implications) inside Horn/Krom: "
                    "the constant-|M| slice encodes independent set exactly");
    if (p.in_iv2() || p.in_id1())
        return make(VerdictLabel::fpt,
                    "dualHorn exact sizing pads freely above the minimum cover; 2-affine sizes "
                    "form an interval");
    return make(VerdictLabel::unclassified, "affine gap: no rule covers this position");
}

}  // namespace

Verdict classify(const LatticeProfile& p, Variant variant, Param param) {
    if (param == Param::E && variant == Variant::plain)
        throw std::invalid_argument(
            "the plain variant has no solution-size parameter: |E| is not meaningful");
    if (param == Param::V)
        return make(VerdictLabel::fpt,
                    "2^|V| assignments cover every query regardless of the language");
    if (param == Param::H) return classify_h(p);
    if (param == Param::E) return classify_e(p, variant);
    return classify_m(p, variant);
}

Verdict classify(const ConstraintLanguage& lang, Variant variant, Param param) {
    return classify(lattice_profile(lang), variant, param);
}

}  // namespace abdkit
