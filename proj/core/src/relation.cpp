#include "abdkit/relation.hpp"

#include <algorithm>
#include <stdexcept>

namespace abdkit {

Relation::Relation(std::string name_, int arity_, std::vector<Tuple> tuples_)
    : name(std::move(name_)), arity(arity_), tuples(std::move(tuples_)) {
    if (arity < 1 || arity > 20)
        throw std::invalid_argument("relation " + name + ": arity out of range");
    const Tuple limit = Tuple{1} << arity;
    for (Tuple t : tuples)
        if (t >= limit)
            throw std::invalid_argument("relation " + name + ": tuple exceeds arity");
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
}

Relation Relation::from_strings(std::string name, const std::vector<std::string>& rows) {
    if (rows.empty())
        throw std::invalid_argument("relation " + name + ": no tuples");
    int arity = static_cast<int>(rows.front().size());
    std::vector<Tuple> tuples;
    tuples.reserve(rows.size());
    for (const std::string& row : rows) {
        if (static_cast<int>(row.size()) != arity)
            throw std::invalid_argument("relation " + name + ": ragged tuple list");
        Tuple t = 0;
        for (int i = 0; i < arity; ++i) {
            if (row[i] == '1')
                t |= Tuple{1} << i;
            else if (row[i] != '0')
                throw std::invalid_argument("relation " + name + ": bad tuple character");
        }
        tuples.push_back(t);
    }
    return Relation(std::move(name), arity, std::move(tuples));
}

bool Relation::contains(Tuple t) const {
    return std::binary_search(tuples.begin(), tuples.end(), t);
}

std::string Relation::tuple_string(Tuple t) const {
    std::string s(arity, '0');
    for (int i = 0; i < arity; ++i)
        if (tuple_bit(t, i)) s[i] = '1';
    return s;
}

bool Relation::same_content(const Relation& other) const {
    return arity == other.arity && tuples == other.tuples;
}

ConstraintLanguage::ConstraintLanguage(std::vector<Relation> rels) {
    for (Relation& r : rels) add(std::move(r));
}

void ConstraintLanguage::add(Relation r) {
    if (const Relation* existing = find(r.name)) {
        if (!existing->same_content(r))
            throw std::invalid_argument("relation " + r.name + " redefined with different tuples");
        return;
    }
    relations.push_back(std::move(r));
}

const Relation* ConstraintLanguage::find(const std::string& name) const {
    for (const Relation& r : relations)
        if (r.name == name) return &r;
    return nullptr;
}

const Relation& ConstraintLanguage::at(const std::string& name) const {
    if (const Relation* r = find(name)) return *r;
    throw std::out_of_range("unknown relation " + name);
}

int ConstraintLanguage::max_arity() const {
    int m = 0;
    for (const Relation& r : relations) m = std::max(m, r.arity);
    return m;
}

Relation rel_unit_true(std::string name) { return Relation(std::move(name), 1, {1}); }
Relation rel_unit_false(std::string name) { return Relation(std::move(name), 1, {0}); }
Relation rel_eq(std::string name) { return Relation(std::move(name), 2, {0b00, 0b11}); }
Relation rel_neq(std::string name) { return Relation(std::move(name), 2, {0b01, 0b10}); }
Relation rel_imp(std::string name) { return Relation(std::move(name), 2, {0b00, 0b10, 0b11}); }

Relation rel_nand(int width, std::string name) {
    if (name.empty()) name = "NAND" + std::to_string(width);
    std::vector<Tuple> tuples;
    const Tuple all = (Tuple{1} << width) - 1;
    for (Tuple t = 0; t <= all; ++t)
        if (t != all) tuples.push_back(t);
    return Relation(std::move(name), width, std::move(tuples));
}

Relation rel_or(int width, std::string name) {
    if (name.empty()) name = "OR" + std::to_string(width);
    std::vector<Tuple> tuples;
    for (Tuple t = 1; t < (Tuple{1} << width); ++t) tuples.push_back(t);
    return Relation(std::move(name), width, std::move(tuples));
}

Relation rel_and_imp(std::string name) {
    // x & y -> z: everything but 110 (x=1, y=1, z=0)
    std::vector<Tuple> tuples;
    for (Tuple t = 0; t < 8; ++t)
        if (!(tuple_bit(t, 0) && tuple_bit(t, 1) && !tuple_bit(t, 2))) tuples.push_back(t);
    return Relation(std::move(name), 3, std::move(tuples));
}

Relation rel_or_imp(std::string name) {
    // x -> y v z: everything but 100
    std::vector<Tuple> tuples;
    for (Tuple t = 0; t < 8; ++t)
        if (!(tuple_bit(t, 0) && !tuple_bit(t, 1) && !tuple_bit(t, 2))) tuples.push_back(t);
    return Relation(std::move(name), 3, std::move(tuples));
}

Relation rel_xor(int width, bool parity, std::string name) {
    if (name.empty()) name = "XOR" + std::to_string(width) + (parity ? "1" : "0");
    std::vector<Tuple> tuples;
    for (Tuple t = 0; t < (Tuple{1} << width); ++t) {
        int ones = 0;
        for (int i = 0; i < width; ++i) ones += tuple_bit(t, i);
        if ((ones & 1) == (parity ? 1 : 0)) tuples.push_back(t);
    }
    return Relation(std::move(name), width, std::move(tuples));
}

Relation rel_even4(std::string name) { return rel_xor(4, false, std::move(name)); }

Relation rel_one_in_three(std::string name) {
    return Relation(std::move(name), 3, {0b001, 0b010, 0b100});
}

}  // namespace abdkit
