#include "abdkit/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace abdkit {

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

namespace {

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : line) {
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!current.empty()) tokens.push_back(std::move(current)), current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::string require_identifier(const std::string& tok, int lineno, const char* what) {
    if (!is_identifier(tok))
        throw parse_error(lineno, std::string("invalid ") + what + " '" + tok + "'");
    return tok;
}

}  // namespace

AbductionInstance parse_instance(std::string_view text) {
    AbductionInstance inst;
    bool saw_size = false;

    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
        ++lineno;

        std::vector<std::string> tok = tokenize(line);
        if (tok.empty()) continue;
        const std::string& head = tok[0];

        if (head == "rel") {
            if (tok.size() < 4) throw parse_error(lineno, "rel needs NAME ARITY TUPLE...");
            std::string name = require_identifier(tok[1], lineno, "relation name");
            int arity = 0;
            try {
                arity = std::stoi(tok[2]);
            } catch (...) {
                throw parse_error(lineno, "bad arity '" + tok[2] + "'");
            }
            if (arity < 1) throw parse_error(lineno, "arity must be positive");
            std::vector<std::string> rows(tok.begin() + 3, tok.end());
            for (const std::string& row : rows) {
                if (static_cast<int>(row.size()) != arity)
                    throw parse_error(lineno, "tuple '" + row + "' does not have length " +
                                                  std::to_string(arity));
                if (row.find_first_not_of("01") != std::string::npos)
                    throw parse_error(lineno, "tuple '" + row + "' is not a bitstring");
            }
            try {
                inst.language.add(Relation::from_strings(name, rows));
            } catch (const std::invalid_argument& e) {
                throw parse_error(lineno, e.what());
            }
        } else if (head == "con") {
            if (tok.size() < 2) throw parse_error(lineno, "con needs a relation name");
            std::string name = require_identifier(tok[1], lineno, "relation name");
            const Relation* rel = inst.language.find(name);
            if (!rel) throw parse_error(lineno, "unknown relation '" + name + "'");
            std::vector<std::string> args;
            for (std::size_t i = 2; i < tok.size(); ++i)
                args.push_back(require_identifier(tok[i], lineno, "variable"));
            if (static_cast<int>(args.size()) != rel->arity)
                throw parse_error(lineno, "relation " + name + " has arity " +
                                              std::to_string(rel->arity) + ", got " +
                                              std::to_string(args.size()) + " arguments");
            inst.kb.constraints.push_back(Constraint{name, std::move(args)});
        } else if (head == "hyp" || head == "man") {
            if (tok.size() < 2) throw parse_error(lineno, head + " needs at least one variable");
            auto& target = (head == "hyp") ? inst.hypotheses : inst.manifestations;
            for (std::size_t i = 1; i < tok.size(); ++i)
                target.push_back(require_identifier(tok[i], lineno, "variable"));
        } else if (head == "size") {
            if (saw_size) throw parse_error(lineno, "duplicate size line");
            if (tok.size() != 2) throw parse_error(lineno, "size needs one integer");
            int s = 0;
            try {
                s = std::stoi(tok[1]);
            } catch (...) {
                throw parse_error(lineno, "bad size '" + tok[1] + "'");
            }
            if (s < 0) throw parse_error(lineno, "size must be non-negative");
            inst.size = s;
            saw_size = true;
        } else {
            throw parse_error(lineno, "unknown directive '" + head + "'");
        }
    }

    try {
        inst.finalize();
    } catch (const std::invalid_argument& e) {
        throw parse_error(lineno, e.what());
    }
    return inst;
}

AbductionInstance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string serialize_instance(const AbductionInstance& inst) {
    std::ostringstream out;
    std::vector<const Relation*> rels;
    for (const Relation& r : inst.language.relations) rels.push_back(&r);
    std::sort(rels.begin(), rels.end(),
              [](const Relation* a, const Relation* b) { return a->name < b->name; });
    for (const Relation* r : rels) {
        out << "rel " << r->name << ' ' << r->arity;
        for (Tuple t : r->tuples) out << ' ' << r->tuple_string(t);
        out << '\n';
    }
    for (const Constraint& c : inst.kb.constraints) {
        out << "con " << c.relation;
        for (const std::string& a : c.args) out << ' ' << a;
        out << '\n';
    }
    if (!inst.hypotheses.empty()) {
        out << "hyp";
        for (const std::string& h : inst.hypotheses) out << ' ' << h;
        out << '\n';
    }
    if (!inst.manifestations.empty()) {
        out << "man";
        for (const std::string& m : inst.manifestations) out << ' ' << m;
        out << '\n';
    }
    if (inst.size) out << "size " << *inst.size << '\n';
    return out.str();
}

}  // namespace abdkit
