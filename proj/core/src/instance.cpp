#include "abdkit/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace abdkit {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::plain: return "plain";
        case Variant::at_most: return "le";
        case Variant::exact: return "eq";
    }
    return "?";
}

std::string to_string(Param p) {
    switch (p) {
        case Param::H: return "H";
        case Param::M: return "M";
        case Param::V: return "V";
        case Param::E: return "E";
    }
    return "?";
}

std::optional<Variant> variant_from_string(const std::string& s) {
    if (s == "plain") return Variant::plain;
    if (s == "le" || s == "atmost") return Variant::at_most;
    if (s == "eq" || s == "exact") return Variant::exact;
    return std::nullopt;
}

std::optional<Param> param_from_string(const std::string& s) {
    if (s == "H") return Param::H;
    if (s == "M") return Param::M;
    if (s == "V") return Param::V;
    if (s == "E") return Param::E;
    return std::nullopt;
}

int weight(const Assignment& a) {
    int w = 0;
    for (const auto& [var, val] : a)
        if (val) ++w;
    return w;
}

void AbductionInstance::finalize() {
    std::vector<std::string> vars;
    for (const Constraint& c : kb.constraints) {
        const Relation& r = language.at(c.relation);
        if (static_cast<int>(c.args.size()) != r.arity)
            throw std::invalid_argument("constraint " + c.relation + ": expected " +
                                        std::to_string(r.arity) + " arguments, got " +
                                        std::to_string(c.args.size()));
        vars.insert(vars.end(), c.args.begin(), c.args.end());
    }
    hypotheses = sorted_unique(std::move(hypotheses));
    manifestations = sorted_unique(std::move(manifestations));
    vars.insert(vars.end(), hypotheses.begin(), hypotheses.end());
    vars.insert(vars.end(), manifestations.begin(), manifestations.end());
    variables = sorted_unique(std::move(vars));
    if (size && *size < 0) throw std::invalid_argument("negative size bound");
}

int AbductionInstance::var_index(const std::string& v) const {
    auto it = std::lower_bound(variables.begin(), variables.end(), v);
    if (it == variables.end() || *it != v) return -1;
    return static_cast<int>(it - variables.begin());
}

bool AbductionInstance::is_hypothesis(const std::string& v) const {
    return sorted_contains(hypotheses, v);
}

bool AbductionInstance::is_manifestation(const std::string& v) const {
    return sorted_contains(manifestations, v);
}

int AbductionInstance::required_size(Variant variant) const {
    if (variant == Variant::plain)
        throw std::invalid_argument("plain variant carries no size bound");
    if (!size) throw std::invalid_argument("size bound required for sized variant");
    return *size;
}

bool eval_constraint(const Constraint& c, const ConstraintLanguage& lang, const Assignment& a) {
    const Relation& r = lang.at(c.relation);
    Tuple t = 0;
    for (int i = 0; i < r.arity; ++i) {
        auto it = a.find(c.args[i]);
        if (it == a.end())
            throw std::invalid_argument("unassigned variable " + c.args[i]);
        if (it->second) t |= Tuple{1} << i;
    }
    return r.contains(t);
}

bool sorted_contains(const std::vector<std::string>& xs, const std::string& x) {
    return std::binary_search(xs.begin(), xs.end(), x);
}

std::vector<std::string> sorted_unique(std::vector<std::string> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

std::vector<std::string> set_minus(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<std::string> set_union(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace abdkit
