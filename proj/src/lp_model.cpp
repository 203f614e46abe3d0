#include "tspsd/milp.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace tspsd {

std::size_t MilpModel::add_variable(std::string var_name, VarType type)
{
    variables.push_back(Variable{std::move(var_name), type});
    return variables.size() - 1;
}

std::size_t MilpModel::find(const std::string& var_name) const
{
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].name == var_name) {
            return i;
        }
    }
    throw Error(ErrorCode::invalid_input, "unknown variable '" + var_name + "'");
}

std::size_t MilpModel::count(VarType type) const noexcept
{
    std::size_t n = 0;
    for (const auto& v : variables) {
        n += v.type == type ? 1 : 0;
    }
    return n;
}

namespace {

constexpr std::size_t kLineWidth = 80;

std::string number(double v)
{
    if (v == 0.0) {
        v = 0.0;  // drop the sign of -0
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const char* sense_text(Sense s)
{
    switch (s) {
    case Sense::le: return "<=";
    case Sense::ge: return ">=";
    case Sense::eq: return "=";
    }
    return "=";
}

class LineWriter {
public:
    explicit LineWriter(std::string& out) : out_(out) {}

    void start(const std::string& head)
    {
        line_ = head;
        fresh_ = true;
    }

    void piece(const std::string& p)
    {
        if (!fresh_ && line_.size() + 1 + p.size() > kLineWidth) {
            out_ += line_;
            out_ += '\n';
            line_ = "   " + p;
            return;
        }
        line_ += ' ';
        line_ += p;
        fresh_ = false;
    }

    void finish()
    {
        out_ += line_;
        out_ += '\n';
        line_.clear();
    }

private:
    std::string& out_;
    std::string line_;
    bool fresh_ = true;
};

void write_terms(LineWriter& w, const MilpModel& m, const std::vector<Term>& terms)
{
    if (terms.empty()) {
        // an empty row still needs a variable to be valid LP
        w.piece("0 " + m.variables.front().name);
        return;
    }
    bool first = true;
    for (const auto& t : terms) {
        const double c = t.coef == 0.0 ? 0.0 : t.coef;
        const std::string& var = m.variables[t.var].name;
        if (first) {
            w.piece(number(c) + " " + var);
            first = false;
        } else if (std::signbit(c)) {
            w.piece("- " + number(-c) + " " + var);
        } else {
            w.piece("+ " + number(c) + " " + var);
        }
    }
}

}  // namespace

std::string write_lp(const MilpModel& m)
{
    if (m.variables.empty()) {
        throw Error(ErrorCode::invalid_input, "model has no variables");
    }
    std::string out;
    out += "\\Problem name: " + m.name + "\n";
    out += "\\ big_M = " + number(m.big_m) + "\n";
    for (const auto& c : m.comments) {
        out += "\\ " + c + "\n";
    }

    // variable lists follow first use so that a parsed model writes back verbatim
    std::vector<std::size_t> order;
    std::vector<bool> listed(m.variables.size(), false);
    auto note = [&](const std::vector<Term>& terms) {
        for (const auto& t : terms) {
            if (!listed[t.var]) {
                listed[t.var] = true;
                order.push_back(t.var);
            }
        }
    };
    note(m.objective);
    for (const auto& c : m.constraints) {
        note(c.terms);
    }
    for (std::size_t i = 0; i < m.variables.size(); ++i) {
        if (!listed[i]) {
            order.push_back(i);
        }
    }

    LineWriter w(out);
    out += "Minimize\n";
    w.start(" obj:");
    write_terms(w, m, m.objective);
    w.finish();

    out += "Subject To\n";
    for (const auto& c : m.constraints) {
        w.start(" " + c.name + ":");
        write_terms(w, m, c.terms);
        w.piece(std::string(sense_text(c.sense)) + " " + number(c.rhs));
        w.finish();
    }

    out += "Bounds\n";
    for (std::size_t i : order) {
        const auto& v = m.variables[i];
        if (v.type == VarType::binary || (v.lower == 0.0 && v.upper == std::numeric_limits<double>::infinity())) {
            continue;
        }
        out += " " + number(v.lower) + " <= " + v.name + " <= " + number(v.upper) + "\n";
    }

    for (auto [type, title] : {std::pair{VarType::binary, "Binaries"}, std::pair{VarType::integer, "Generals"}}) {
        out += std::string(title) + "\n";
        bool any = false;
        w.start("");
        for (std::size_t i : order) {
            if (m.variables[i].type == type) {
                w.piece(m.variables[i].name);
                any = true;
            }
        }
        if (any) {
            w.finish();
        }
    }
    out += "End\n";
    return out;
}

namespace {

[[noreturn]] void bad(const std::string& why)
{
    throw Error(ErrorCode::invalid_input, "LP parse error: " + why);
}

double to_number(const std::string& tok)
{
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size()) {
        bad("expected a number, got '" + tok + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) {
        out.push_back(tok);
    }
    return out;
}

class Parser {
public:
    MilpModel run(const std::string& text)
    {
        std::istringstream in(text);
        std::string line;
        enum class Section { header, objective, rows, bounds, binaries, generals, end } sec = Section::header;
        std::vector<std::string> row;
        auto flush = [&] {
            if (row.empty()) {
                return;
            }
            if (sec == Section::objective) {
                objective_row(row);
            } else {
                constraint_row(row);
            }
            row.clear();
        };

        while (std::getline(in, line)) {
            if (line.rfind("\\Problem name: ", 0) == 0) {
                m_.name = line.substr(15);
                continue;
            }
            if (line.rfind("\\ big_M = ", 0) == 0) {
                m_.big_m = to_number(line.substr(10));
                continue;
            }
            if (line.rfind("\\ ", 0) == 0) {
                m_.comments.push_back(line.substr(2));
                continue;
            }
            Section next = sec;
            if (line == "Minimize") {
                next = Section::objective;
            } else if (line == "Subject To") {
                next = Section::rows;
            } else if (line == "Bounds") {
                next = Section::bounds;
            } else if (line == "Binaries") {
                next = Section::binaries;
            } else if (line == "Generals") {
                next = Section::generals;
            } else if (line == "End") {
                next = Section::end;
            }
            if (next != sec) {
                flush();
                sec = next;
                continue;
            }
            auto toks = split(line);
            if (toks.empty()) {
                continue;
            }
            switch (sec) {
            case Section::header: bad("text before Minimize");
            case Section::end: bad("text after End");
            case Section::objective:
            case Section::rows:
                if (toks.front().back() == ':') {
                    flush();
                }
                row.insert(row.end(), toks.begin(), toks.end());
                break;
            case Section::bounds: {
                if (toks.size() != 5 || toks[1] != "<=" || toks[3] != "<=") {
                    bad("bounds line '" + line + "'");
                }
                auto& v = m_.variables[var(toks[2])];
                v.lower = to_number(toks[0]);
                v.upper = to_number(toks[4]);
                break;
            }
            case Section::binaries:
            case Section::generals:
                for (const auto& t : toks) {
                    m_.variables[var(t)].type = sec == Section::binaries ? VarType::binary : VarType::integer;
                }
                break;
            }
        }
        if (sec != Section::end) {
            bad("missing End");
        }
        return std::move(m_);
    }

private:
    std::size_t var(const std::string& name)
    {
        auto it = index_.find(name);
        if (it != index_.end()) {
            return it->second;
        }
        const std::size_t id = m_.add_variable(name);
        index_.emplace(name, id);
        return id;
    }

    // Reads `c x (+|-) c x ...` from toks[pos..], stopping at a relation.
    std::size_t terms(const std::vector<std::string>& toks, std::size_t pos, std::vector<Term>& out)
    {
        bool first = true;
        while (pos < toks.size()) {
            const std::string& t = toks[pos];
            if (t == "<=" || t == ">=" || t == "=") {
                break;
            }
            double sign = 1.0;
            if (!first) {
                if (t != "+" && t != "-") {
                    bad("expected + or - before '" + t + "'");
                }
                sign = t == "-" ? -1.0 : 1.0;
                ++pos;
            }
            if (pos + 1 >= toks.size()) {
                bad("truncated term");
            }
            const double coef = sign * to_number(toks[pos]);
            out.push_back(Term{var(toks[pos + 1]), coef});
            pos += 2;
            first = false;
        }
        return pos;
    }

    void objective_row(const std::vector<std::string>& toks)
    {
        if (toks.front() != "obj:") {
            bad("objective must be named obj");
        }
        if (terms(toks, 1, m_.objective) != toks.size()) {
            bad("relation in the objective");
        }
    }

    void constraint_row(const std::vector<std::string>& toks)
    {
        Constraint c;
        c.name = toks.front().substr(0, toks.front().size() - 1);
        if (toks.front().back() != ':') {
            bad("row without a name");
        }
        std::size_t pos = terms(toks, 1, c.terms);
        if (pos + 2 != toks.size()) {
            bad("row '" + c.name + "' must end with a relation and a number");
        }
        const std::string& op = toks[pos];
        c.sense = op == "<=" ? Sense::le : op == ">=" ? Sense::ge : Sense::eq;
        c.rhs = to_number(toks[pos + 1]);
        m_.constraints.push_back(std::move(c));
    }

    MilpModel m_;
    std::map<std::string, std::size_t> index_;
};

}  // namespace

MilpModel parse_lp(const std::string& text)
{
    return Parser().run(text);
}

}  // namespace tspsd
