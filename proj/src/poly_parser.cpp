#include "hybridlie/poly_parser.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace hybridlie {

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_space();
        return pos >= text.size();
    }
    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("polynomial literal: " + what + " at position " +
                                    std::to_string(pos) + " in \"" + text + "\"");
    }
};

double parse_number(Cursor& c) {
    c.skip_space();
    const char* begin = c.text.c_str() + c.pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) c.fail("expected a number");
    c.pos += static_cast<size_t>(end - begin);
    return v;
}

int parse_uint(Cursor& c) {
    c.skip_space();
    size_t start = c.pos;
    while (c.pos < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[c.pos]))) ++c.pos;
    if (c.pos == start) c.fail("expected an integer");
    return std::stoi(c.text.substr(start, c.pos - start));
}

// factor := number | (x|k)<index>['^'uint]
void parse_factor(Cursor& c, int n_c, double& coeff, std::vector<int>& exps) {
    char ch = c.peek();
    if (ch == 'x' || ch == 'k') {
        ++c.pos;
        int index = parse_uint(c);
        if (index < 1 || index > n_c) c.fail("variable index out of range for n_c");
        int power = 1;
        if (c.peek() == '^') {
            ++c.pos;
            power = parse_uint(c);
        }
        int var = ch == 'x' ? xvar(index - 1) : kvar(n_c, index - 1);
        exps[var] += power;
    } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        coeff *= parse_number(c);
    } else {
        c.fail("expected a coefficient or a variable");
    }
}

}  // namespace

PhasePolynomial parse_polynomial(const std::string& text, int n_c) {
    PhasePolynomial p(n_c);
    Cursor c{text};
    if (c.done()) c.fail("empty literal");
    bool first = true;
    while (!c.done()) {
        double sign = 1.0;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            sign = ch == '-' ? -1.0 : 1.0;
            ++c.pos;
        } else if (!first) {
            c.fail("expected '+' or '-' between terms");
        }
        double coeff = sign;
        std::vector<int> exps(2 * n_c, 0);
        parse_factor(c, n_c, coeff, exps);
        while (c.peek() == '*') {
            ++c.pos;
            parse_factor(c, n_c, coeff, exps);
        }
        p.add_term(exps, coeff);
        first = false;
    }
    return p;
}

std::string format_double(double v) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string format_polynomial(const PhasePolynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, coeff] : p.terms()) {
        double c = coeff;
        if (!first) {
            out << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        out << format_double(c);
        for (int v = 0; v < p.codec().nvars(); ++v) {
            int e = p.codec().exponent(key, v);
            if (e == 0) continue;
            out << '*' << (v < p.n_c() ? 'x' : 'k') << (v < p.n_c() ? v + 1 : v - p.n_c() + 1);
            if (e > 1) out << '^' << e;
        }
    }
    return out.str();
}

}  // namespace hybridlie
