#include "djet/text.hpp"

#include <cctype>
#include <sstream>

#include "djet/error.hpp"

namespace djet {

std::string canonical_text(const JetPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : f.terms()) {
        mpq_class a = c;
        if (first) {
            if (a < 0) {
                os << '-';
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (m.is_one()) {
            os << a.get_str();
        } else if (a == 1) {
            os << m.str();
        } else {
            os << a.get_str() << '*' << m.str();
        }
    }
    return os.str();
}

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip();
        return i >= s.size();
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            fail_usage(std::string("expected '") + c + "' at position " +
                       std::to_string(i) + " in polynomial text");
    }
    bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())); }
    bool at_name() {
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    mpz_class integer() {
        skip();
        bool neg = eat('-');
        if (!at_digit()) fail_usage("expected integer at position " + std::to_string(i));
        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            digits += s[i++];
        mpz_class z(digits);
        return neg ? mpz_class(-z) : z;
    }
    std::string name() {
        skip();
        std::string out;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            out += s[i++];
        if (out.empty()) fail_usage("expected name at position " + std::to_string(i));
        return out;
    }
};

JetPoly parse_expr(Lexer& lx);

JetPoly parse_factor(Lexer& lx) {
    JetPoly base;
    if (lx.eat('(')) {
        base = parse_expr(lx);
        lx.expect(')');
    } else if (lx.at_digit()) {
        mpz_class num = lx.integer();
        if (lx.eat('/')) {
            mpz_class den = lx.integer();
            if (den == 0) fail_usage("zero denominator");
            mpq_class q(num, den);
            q.canonicalize();
            return JetPoly::constant(q); // a/b^e is not in the grammar
        }
        base = JetPoly::constant(mpq_class(num));
    } else if (lx.at_name()) {
        std::string nm = lx.name();
        MultiIndex idx;
        if (lx.eat('@')) {
            lx.expect('(');
            std::vector<int> comp;
            do {
                mpz_class z = lx.integer();
                if (z < 0 || z > 64) fail_usage("jet index out of range");
                comp.push_back(static_cast<int>(z.get_si()));
            } while (lx.eat(','));
            lx.expect(')');
            idx = MultiIndex(std::move(comp));
        }
        base = JetPoly::variable(JetVar(nm, idx));
    } else {
        fail_usage("unexpected character at position " + std::to_string(lx.i));
    }
    if (lx.eat('^')) {
        mpz_class e = lx.integer();
        if (e < -1024 || e > 1024) fail_usage("exponent out of range");
        base = base.pow(static_cast<int>(e.get_si()));
    }
    return base;
}

JetPoly parse_term(Lexer& lx) {
    JetPoly out = parse_factor(lx);
    while (lx.eat('*')) out *= parse_factor(lx);
    return out;
}

JetPoly parse_expr(Lexer& lx) {
    bool neg = false;
    if (lx.eat('-'))
        neg = true;
    else
        lx.eat('+');
    JetPoly out = parse_term(lx);
    if (neg) out = -out;
    for (;;) {
        if (lx.eat('+')) {
            out += parse_term(lx);
        } else if (lx.eat('-')) {
            out -= parse_term(lx);
        } else {
            return out;
        }
    }
}

} // namespace

JetPoly parse_poly(const std::string& text) {
    Lexer lx{text};
    JetPoly out = parse_expr(lx);
    if (!lx.done()) fail_usage("trailing input at position " + std::to_string(lx.i));
    return out;
}

} // namespace djet
