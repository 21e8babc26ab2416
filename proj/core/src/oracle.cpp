#include "abdkit/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

namespace abdkit {

std::uint64_t oracle_limit() {
    if (const char* env = std::getenv("ABDKIT_ORACLE_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return std::uint64_t{1} << 24;
}

namespace {

constexpr int kMaxTableVars = 22;

std::size_t word_count(int nvars) {
    return nvars >= 6 ? (std::size_t{1} << (nvars - 6)) : 1;
}

}  // namespace

ModelTable::ModelTable(const ConstraintLanguage& lang, const KnowledgeBase& kb,
                       std::vector<std::string> vars)
    : vars_(std::move(vars)) {
    const int n = static_cast<int>(vars_.size());
    if (n > kMaxTableVars)
        throw oracle_limit_error("too many variables for exhaustive enumeration: " +
                                 std::to_string(n));
    const std::uint64_t total = assignment_count();
    const std::size_t words = word_count(n);
    bits_.assign(words, ~std::uint64_t{0});
    if (total < 64) bits_[0] = (std::uint64_t{1} << total) - 1;

    // Per-variable masks: bit a set iff assignment a makes the variable true.
    true_mask_.assign(n, std::vector<std::uint64_t>(words, 0));
    for (std::uint64_t a = 0; a < total; ++a)
        for (int i = 0; i < n; ++i)
            if ((a >> (n - 1 - i)) & 1) true_mask_[i][a >> 6] |= std::uint64_t{1} << (a & 63);

    auto index_of = [&](const std::string& v) {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
        if (it == vars_.end() || *it != v)
            throw std::invalid_argument("variable " + v + " not in enumeration set");
        return static_cast<int>(it - vars_.begin());
    };

    for (const Constraint& c : kb.constraints) {
        const Relation& r = lang.at(c.relation);
        std::vector<int> arg_idx;
        arg_idx.reserve(c.args.size());
        for (const std::string& a : c.args) arg_idx.push_back(index_of(a));
        for (std::uint64_t a = 0; a < total; ++a) {
            Tuple t = 0;
            for (int j = 0; j < r.arity; ++j)
                if ((a >> (n - 1 - arg_idx[j])) & 1) t |= Tuple{1} << j;
            if (!r.contains(t)) bits_[a >> 6] &= ~(std::uint64_t{1} << (a & 63));
        }
    }
}

bool ModelTable::any() const {
    for (std::uint64_t w : bits_)
        if (w) return true;
    return false;
}

Assignment ModelTable::decode(std::uint64_t index) const {
    Assignment a;
    const int n = num_vars();
    for (int i = 0; i < n; ++i) a[vars_[i]] = (index >> (n - 1 - i)) & 1;
    return a;
}

std::optional<Assignment> ModelTable::first_model() const {
    for (std::size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w]) return decode(w * 64 + std::countr_zero(bits_[w]));
    return std::nullopt;
}

ModelTable ModelTable::restrict_true(const std::vector<std::string>& vars_true) const {
    ModelTable out;
    out.vars_ = vars_;
    out.true_mask_ = true_mask_;
    out.bits_ = bits_;
    for (const std::string& v : vars_true) {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
        if (it == vars_.end() || *it != v)
            throw std::invalid_argument("variable " + v + " not in enumeration set");
        const auto& mask = true_mask_[it - vars_.begin()];
        for (std::size_t w = 0; w < out.bits_.size(); ++w) out.bits_[w] &= mask[w];
    }
    return out;
}

bool ModelTable::all_true(const std::string& v) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
    if (it == vars_.end() || *it != v)
        throw std::invalid_argument("variable " + v + " not in enumeration set");
    const auto& mask = true_mask_[it - vars_.begin()];
    for (std::size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w] & ~mask[w]) return false;
    return true;
}

std::optional<Assignment> sat_bruteforce(const ConstraintLanguage& lang, const KnowledgeBase& kb,
                                         const std::vector<std::string>& vars) {
    return ModelTable(lang, kb, sorted_unique(vars)).first_model();
}

bool entails_bruteforce(const ConstraintLanguage& lang, const KnowledgeBase& kb,
                        const std::vector<std::string>& assume_true,
                        const std::vector<std::string>& manifestations,
                        const std::vector<std::string>& vars) {
    std::vector<std::string> all = sorted_unique(vars);
    all = set_union(all, sorted_unique(assume_true));
    all = set_union(all, sorted_unique(manifestations));
    ModelTable table = ModelTable(lang, kb, all).restrict_true(assume_true);
    for (const std::string& m : manifestations)
        if (!table.all_true(m)) return false;
    return true;
}

bool for_each_subset_by_size(int n, int lo, int hi,
                             const std::function<bool(const std::vector<int>&)>& fn) {
    lo = std::max(lo, 0);
    hi = std::min(hi, n);
    for (int k = lo; k <= hi; ++k) {
        std::vector<int> combo(k);
        for (int i = 0; i < k; ++i) combo[i] = i;
        while (true) {
            if (fn(combo)) return true;
            // next combination in lexicographic order
            int i = k - 1;
            while (i >= 0 && combo[i] == n - k + i) --i;
            if (i < 0) break;
            ++combo[i];
            for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
        }
    }
    return false;
}

std::optional<Explanation> oracle_abduce(const AbductionInstance& inst, Variant variant) {
    const int h = static_cast<int>(inst.hypotheses.size());
    const int v = static_cast<int>(inst.variables.size());
    if ((std::uint64_t{1} << h) > oracle_limit() / (std::uint64_t{1} << std::min(v, 63)))
        throw oracle_limit_error("2^|H| * 2^|V| exceeds ABDKIT_ORACLE_LIMIT");

    int lo = 0, hi = h;
    if (variant != Variant::plain) {
        int s = inst.required_size(variant);
        if (variant == Variant::exact) {
            if (s > h) return std::nullopt;
            lo = hi = s;
        } else {
            hi = std::min(s, h);
        }
    }

    ModelTable kb_models(inst.language, inst.kb, inst.variables);
    std::optional<Explanation> found;
    for_each_subset_by_size(h, lo, hi, [&](const std::vector<int>& combo) {
        Explanation e;
        e.reserve(combo.size());
        for (int i : combo) e.push_back(inst.hypotheses[i]);
        ModelTable restricted = kb_models.restrict_true(e);
        if (!restricted.any()) return false;
        for (const std::string& m : inst.manifestations)
            if (!restricted.all_true(m)) return false;
        found = std::move(e);
        return true;
    });
    return found;
}

}  // namespace abdkit
