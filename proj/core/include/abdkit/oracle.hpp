#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "abdkit/instance.hpp"

namespace abdkit {

/// Work cap for exhaustive search, read from ABDKIT_ORACLE_LIMIT
/// (default 2^24). Measured as 2^|H| * 2^|V|.
std::uint64_t oracle_limit();

class oracle_limit_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The set of models of a constraint conjunction, as one bit per assignment
/// over a fixed variable list. Assignment index a maps variable i (in list
/// order) to bit (n-1-i) of a, so index order is lexicographic with 0 < 1.
class ModelTable {
  public:
    ModelTable(const ConstraintLanguage& lang, const KnowledgeBase& kb,
               std::vector<std::string> vars);

    int num_vars() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& vars() const { return vars_; }

    bool any() const;
    /// Lexicographically first model, if any.
    std::optional<Assignment> first_model() const;

    /// Models where every listed variable is true.
    ModelTable restrict_true(const std::vector<std::string>& vars_true) const;
    /// True iff every model sets v to 1 (vacuously true when empty).
    bool all_true(const std::string& v) const;

  private:
    ModelTable() = default;
    std::vector<std::string> vars_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::vector<std::uint64_t>> true_mask_;  // per variable

    std::uint64_t assignment_count() const { return std::uint64_t{1} << vars_.size(); }
    Assignment decode(std::uint64_t index) const;
};

/// First satisfying assignment over `vars` in lexicographic order (0 before
/// 1), or nullopt. `vars` must cover the KB's variables.
std::optional<Assignment> sat_bruteforce(const ConstraintLanguage& lang, const KnowledgeBase& kb,
                                         const std::vector<std::string>& vars);

/// Does kb AND (all of assume_true) entail every variable of M? Vacuously
/// true when the conjunction is unsatisfiable; pair with a sat check.
bool entails_bruteforce(const ConstraintLanguage& lang, const KnowledgeBase& kb,
                        const std::vector<std::string>& assume_true,
                        const std::vector<std::string>& manifestations,
                        const std::vector<std::string>& vars);

/// Exhaustive reference solver. Enumerates E subseteq H by increasing size,
/// lexicographically within a size, and returns the first E with KB & E
/// satisfiable and KB & E |= M. Size bounds follow the variant.
std::optional<Explanation> oracle_abduce(const AbductionInstance& inst, Variant variant);

/// Calls fn for each subset of {0..n-1} with lo <= size <= hi in
/// (size, lex) order until fn returns true; returns whether fn stopped.
bool for_each_subset_by_size(int n, int lo, int hi,
                             const std::function<bool(const std::vector<int>&)>& fn);

}  // namespace abdkit
