#include "k3auto/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace k3auto {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
};

Rat read_rational(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.pos;
    std::string digits;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
        digits += c.s[c.pos++];
    if (digits.empty()) throw ParseError("expected a number", start);
    if (c.pos < c.s.size() && c.s[c.pos] == '/') {
        ++c.pos;
        std::string den;
        while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
            den += c.s[c.pos++];
        if (den.empty()) throw ParseError("expected a denominator after '/'", c.pos);
        auto q = parse_rat(digits + "/" + den);
        if (!q || *q == 0 || den == "0") {
            if (den == "0") throw ParseError("zero denominator", start);
        }
        return *parse_rat(digits + "/" + den);
    }
    return *parse_rat(digits);
}

}  // namespace

RatPoly parse_poly(const std::string& text, const std::string& var) {
    Cursor c{text};
    RatPoly acc;
    bool first = true;
    while (!c.done()) {
        int sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            sign = (ch == '-') ? -1 : 1;
            ++c.pos;
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms", c.pos);
        }
        first = false;
        c.skip_ws();
        // term: [coef ['*']] [var ['^' k]]
        Rat coef(1);
        bool saw_coef = false;
        if (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
            coef = read_rational(c);
            saw_coef = true;
            c.skip_ws();
            if (c.pos < c.s.size() && c.s[c.pos] == '*') ++c.pos;
            c.skip_ws();
        }
        std::size_t k = 0;
        bool saw_var = false;
        if (c.pos + var.size() <= c.s.size() && c.s.compare(c.pos, var.size(), var) == 0) {
            saw_var = true;
            c.pos += var.size();
            c.skip_ws();
            if (c.pos < c.s.size() && c.s[c.pos] == '^') {
                ++c.pos;
                c.skip_ws();
                std::string digits;
                while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
                    digits += c.s[c.pos++];
                if (digits.empty()) throw ParseError("expected an exponent after '^'", c.pos);
                k = std::stoul(digits);
            } else {
                k = 1;
            }
        }
        if (!saw_coef && !saw_var)
            throw ParseError("expected a term", c.pos);
        acc = acc + RatPoly::monomial(coef * sign, k);
    }
    if (first) throw ParseError("empty polynomial", 0);
    return acc;
}

LinearConstraint parse_constraint(const std::string& text, std::size_t num_point_vars) {
    Cursor c{text};
    std::size_t nvars = num_point_vars + 1;
    LinearConstraint out;
    out.coefs.assign(nvars, Rat(0));
    out.tag = text;
    int side = 1;  // accumulate left side minus right side for variables
    bool saw_rel = false;
    Rat constant(0);  // rhs - lhs constants
    std::string rel;
    while (!c.done()) {
        char ch = c.peek();
        int sign = 1;
        if (ch == '+' || ch == '-') {
            sign = (ch == '-') ? -1 : 1;
            ++c.pos;
            c.skip_ws();
            ch = c.peek();
        }
        if (ch == '<' || ch == '=' || ch == '>') {
            std::size_t at = c.pos;
            if (saw_rel) throw ParseError("duplicate relation", at);
            if (ch == '<') {
                ++c.pos;
                if (c.peek() != '=') throw ParseError("expected '<='", c.pos);
                ++c.pos;
                rel = "<=";
            } else if (ch == '>') {
                throw ParseError("'>=' not supported; rewrite with '<='", at);
            } else {
                ++c.pos;
                rel = "=";
            }
            saw_rel = true;
            side = -1;
            continue;
        }
        // "mod m" suffix
        if ((ch == 'm' || ch == 'M') && c.s.compare(c.pos, 3, "mod") == 0) {
            if (!saw_rel || rel != "=")
                throw ParseError("'mod' requires an '=' relation", c.pos);
            c.pos += 3;
            Rat m = read_rational(c);
            if (!is_integer(m) || m <= 0) throw ParseError("modulus must be a positive integer", c.pos);
            out.rel = Rel::Mod;
            out.modulus = to_long(to_int(m));
            if (!c.done()) throw ParseError("trailing input after modulus", c.pos);
            out.rhs = constant;
            return out;
        }
        std::size_t term_start = c.pos;
        Rat coef(1);
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            coef = read_rational(c);
            c.skip_ws();
            if (c.pos < c.s.size() && c.s[c.pos] == '*') {
                ++c.pos;
                c.skip_ws();
            } else {
                // bare constant term
                constant += Rat(-side) * coef * sign;
                continue;
            }
        }
        // variable name: aK or alpha
        c.skip_ws();
        if (c.s.compare(c.pos, 5, "alpha") == 0) {
            out.coefs[nvars - 1] += Rat(side) * coef * sign;
            c.pos += 5;
            continue;
        }
        if (c.pos < c.s.size() && c.s[c.pos] == 'a') {
            ++c.pos;
            std::string digits;
            while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
                digits += c.s[c.pos++];
            if (digits.empty()) throw ParseError("expected a variable index after 'a'", c.pos);
            std::size_t idx = std::stoul(digits);
            if (idx < 1 || idx > num_point_vars)
                throw ParseError("variable a" + digits + " out of range (1.." +
                                     std::to_string(num_point_vars) + ")",
                                 term_start);
            out.coefs[idx - 1] += Rat(side) * coef * sign;
            continue;
        }
        throw ParseError("expected a variable or number", term_start);
    }
    if (!saw_rel) throw ParseError("missing relation ('<=' or '=')", c.pos);
    out.rel = (rel == "<=") ? Rel::Le : Rel::Eq;
    out.rhs = constant;
    return out;
}

std::pair<long, long> parse_root_token(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'order:exponent'", 0);
    try {
        long o = std::stol(text.substr(0, colon));
        long e = std::stol(text.substr(colon + 1));
        if (o < 1) throw ParseError("order must be positive", 0);
        return {o, e};
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed root of unity '" + text + "'", 0);
    }
}

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "table") return OutputFormat::Table;
    throw std::invalid_argument("unknown output format '" + name + "' (json|csv|table)");
}

std::string render_cells(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows, OutputFormat fmt) {
    std::ostringstream os;
    if (fmt == OutputFormat::Csv) {
        auto emit_row = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) os << ",";
                bool quote = r[i].find_first_of(",\"\n") != std::string::npos;
                if (!quote) {
                    os << r[i];
                } else {
                    os << '"';
                    for (char ch : r[i]) {
                        if (ch == '"') os << '"';
                        os << ch;
                    }
                    os << '"';
                }
            }
            os << "\n";
        };
        emit_row(header);
        for (const auto& r : rows) emit_row(r);
        return os.str();
    }
    // aligned table
    std::vector<std::size_t> width(header.size(), 0);
    auto widen = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i)
            width[i] = std::max(width[i], r[i].size());
    };
    widen(header);
    for (const auto& r : rows) widen(r);
    auto emit_row = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) os << "  ";
            os << r[i] << std::string(width[i] - std::min(width[i], r[i].size()), ' ');
        }
        os << "\n";
    };
    emit_row(header);
    std::size_t total = 0;
    for (std::size_t w : width) total += w + 2;
    os << std::string(total > 2 ? total - 2 : 0, '-') << "\n";
    for (const auto& r : rows) emit_row(r);
    return os.str();
}

std::string fnv1a_digest(const std::string& payload) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : payload) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

nlohmann::ordered_json RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["input_digest"] = input_digest;
    if (timing_ms >= 0) j["timing_ms"] = timing_ms;
    j["results"] = results;
    return j;
}

}  // namespace k3auto
