#pragma once

#include <string>

#include "abdkit/instance.hpp"
#include "abdkit/lattice.hpp"

namespace abdkit {

enum class VerdictLabel {
    fpt,
    w1_complete,
    w1_hard,
    w2_complete,
    w2_hard,
    wp_complete,
    para_np_complete,
    para_conp_hard,
    para_dp_hard,
    para_sigma2p_hard,
    unclassified,
};

std::string to_string(VerdictLabel label);

struct Verdict {
    VerdictLabel label = VerdictLabel::unclassified;
    std::string source;  // the classification rule that fired, spelled out
};

/// Complexity verdict for the abduction variant over this language under the
/// given parameterisation. Pure in the co-clone position: renaming relations
/// or permuting tuples never changes the answer. The plain variant rejects
/// the solution-size parameter.
Verdict classify(const ConstraintLanguage& lang, Variant variant, Param param);
Verdict classify(const LatticeProfile& profile, Variant variant, Param param);

}  // namespace abdkit
