#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace abdkit {

/// A tuple of a Boolean relation, packed into bits. Bit i holds the value of
/// argument position i (position 0 is the least significant bit).
using Tuple = std::uint32_t;

inline bool tuple_bit(Tuple t, int pos) { return (t >> pos) & 1u; }

/// A finite Boolean relation: a named set of bit tuples of fixed arity.
/// Tuples are kept sorted and duplicate-free.
struct Relation {
    std::string name;
    int arity = 0;
    std::vector<Tuple> tuples;

    Relation() = default;
    Relation(std::string name, int arity, std::vector<Tuple> tuples);

    /// Build from bitstrings, e.g. {"00","01","11"} for x -> y.
    /// Character j of each string is the value of argument position j.
    static Relation from_strings(std::string name, const std::vector<std::string>& rows);

    bool contains(Tuple t) const;
    std::size_t size() const { return tuples.size(); }
    bool is_full() const { return tuples.size() == (std::size_t{1} << arity); }
    bool is_empty() const { return tuples.empty(); }
    std::string tuple_string(Tuple t) const;

    bool same_content(const Relation& other) const;
};

struct ConstraintLanguage {
    std::vector<Relation> relations;

    ConstraintLanguage() = default;
    explicit ConstraintLanguage(std::vector<Relation> rels);

    /// Adds a relation; re-adding identical content under the same name is a
    /// no-op, a name clash with different content is an error.
    void add(Relation r);
    const Relation* find(const std::string& name) const;
    const Relation& at(const std::string& name) const;
    int max_arity() const;
};

// Relations that recur throughout: units, (in)equality, implications,
// clause-shaped relations and the parity relation on four variables.
Relation rel_unit_true(std::string name = "T");
Relation rel_unit_false(std::string name = "F");
Relation rel_eq(std::string name = "EQ");
Relation rel_neq(std::string name = "NEQ");
Relation rel_imp(std::string name = "IMP");
Relation rel_nand(int width, std::string name = "");  // ~x1 v ... v ~xk
Relation rel_or(int width, std::string name = "");    // x1 v ... v xk
Relation rel_and_imp(std::string name = "ANDIMP");    // x & y -> z
Relation rel_or_imp(std::string name = "ORIMP");      // x -> y v z
Relation rel_xor(int width, bool parity, std::string name = "");  // x1+..+xk = parity
Relation rel_even4(std::string name = "EVEN4");       // even-parity 4-tuples
Relation rel_one_in_three(std::string name = "R1IN3");

}  // namespace abdkit
