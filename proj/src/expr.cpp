#include "trispec/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "trispec/geometry.hpp"

namespace tri {

ExprError::ExprError(const std::string& what, std::size_t off)
    : ConfigError(what + " at byte " + std::to_string(off)), offset(off) {}

using K = Expression::Kind;
using Ptr = Expression::Ptr;

namespace {

Ptr mk(K k, Ptr a = nullptr, Ptr b = nullptr) {
    return std::make_shared<const Expression::Node>(Expression::Node{k, 0.0, std::move(a), std::move(b)});
}
Ptr num(double v) { return std::make_shared<const Expression::Node>(Expression::Node{K::NUM, v, nullptr, nullptr}); }

bool is_num(const Ptr& p, double v) { return p->kind == K::NUM && p->value == v; }

class Parser {
public:
    explicit Parser(const std::string& t) : t_(t) {}

    Ptr run() {
        Ptr e = expr();
        skip();
        if (i_ < t_.size()) fail(std::string("unexpected '") + t_[i_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ExprError(msg, i_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ExprError(msg, at); }

    void skip() {
        while (i_ < t_.size() && (t_[i_] == ' ' || t_[i_] == '\t' || t_[i_] == '\n' || t_[i_] == '\r')) ++i_;
    }
    bool accept(char c) {
        skip();
        if (i_ < t_.size() && t_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(i_ < t_.size() ? std::string("expected '") + c + "', found '" + t_[i_] + "'"
                                             : std::string("expected '") + c + "' before end of input");
    }

    Ptr expr() {
        Ptr a = term();
        for (;;) {
            if (accept('+')) a = mk(K::ADD, a, term());
            else if (accept('-')) a = mk(K::SUB, a, term());
            else return a;
        }
    }
    Ptr term() {
        Ptr a = unary();
        for (;;) {
            if (accept('*')) a = mk(K::MUL, a, unary());
            else if (accept('/')) a = mk(K::DIV, a, unary());
            else return a;
        }
    }
    Ptr unary() {
        if (accept('-')) return mk(K::NEG, unary());
        return power();
    }
    Ptr power() {
        Ptr a = atom();
        if (accept('^')) return mk(K::POW, a, unary());
        return a;
    }
    Ptr atom() {
        skip();
        if (i_ >= t_.size()) fail("unexpected end of input");
        const char c = t_[i_];
        if (c == '(') {
            ++i_;
            Ptr e = expr();
            expect(')');
            return e;
        }
        if ((c >= '0' && c <= '9') || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = i_;
            while (i_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[i_])) || t_[i_] == '_')) ++i_;
            const std::string id = t_.substr(start, i_ - start);
            if (id == "s") return mk(K::S);
            if (id == "pi") return mk(K::PI);
            if (id == "l") return mk(K::L);
            static const std::pair<const char*, K> fns[] = {{"sin", K::SIN},   {"cos", K::COS},   {"exp", K::EXP},
                                                            {"sinh", K::SINH}, {"cosh", K::COSH}, {"log", K::LOG}};
            for (const auto& [name, kind] : fns)
                if (id == name) {
                    expect('(');
                    Ptr arg = expr();
                    expect(')');
                    return mk(kind, arg);
                }
            fail_at("unknown identifier '" + id + "'", start);
        }
        fail(std::string("unexpected '") + c + "'");
    }
    Ptr number() {
        const std::size_t start = i_;
        while (i_ < t_.size() && (std::isdigit(static_cast<unsigned char>(t_[i_])) || t_[i_] == '.')) ++i_;
        if (i_ < t_.size() && (t_[i_] == 'e' || t_[i_] == 'E')) {
            std::size_t j = i_ + 1;
            if (j < t_.size() && (t_[j] == '+' || t_[j] == '-')) ++j;
            if (j < t_.size() && std::isdigit(static_cast<unsigned char>(t_[j]))) {
                i_ = j;
                while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
            }
        }
        double v = 0.0;
        const auto r = std::from_chars(t_.data() + start, t_.data() + i_, v);
        if (r.ec != std::errc() || r.ptr != t_.data() + i_) fail_at("malformed number", start);
        return num(v);
    }

    const std::string& t_;
    std::size_t i_ = 0;
};

double ev(const Expression::Node& n, double s, double l) {
    switch (n.kind) {
        case K::NUM: return n.value;
        case K::S: return s;
        case K::PI: return kPi;
        case K::L: return l;
        case K::ADD: return ev(*n.a, s, l) + ev(*n.b, s, l);
        case K::SUB: return ev(*n.a, s, l) - ev(*n.b, s, l);
        case K::MUL: return ev(*n.a, s, l) * ev(*n.b, s, l);
        case K::DIV: return ev(*n.a, s, l) / ev(*n.b, s, l);
        case K::POW: return std::pow(ev(*n.a, s, l), ev(*n.b, s, l));
        case K::NEG: return -ev(*n.a, s, l);
        case K::SIN: return std::sin(ev(*n.a, s, l));
        case K::COS: return std::cos(ev(*n.a, s, l));
        case K::EXP: return std::exp(ev(*n.a, s, l));
        case K::SINH: return std::sinh(ev(*n.a, s, l));
        case K::COSH: return std::cosh(ev(*n.a, s, l));
        case K::LOG: return std::log(ev(*n.a, s, l));
    }
    return 0.0;
}

bool has_s(const Ptr& p) {
    if (!p) return false;
    return p->kind == K::S || has_s(p->a) || has_s(p->b);
}

// constructors that fold the trivial cases, so derivatives stay short
Ptr add(Ptr a, Ptr b) {
    if (is_num(a, 0.0)) return b;
    if (is_num(b, 0.0)) return a;
    if (a->kind == K::NUM && b->kind == K::NUM) return num(a->value + b->value);
    return mk(K::ADD, a, b);
}
Ptr neg(Ptr a) {
    if (a->kind == K::NUM) return num(-a->value);
    if (a->kind == K::NEG) return a->a;
    return mk(K::NEG, a);
}
Ptr sub(Ptr a, Ptr b) {
    if (is_num(b, 0.0)) return a;
    if (is_num(a, 0.0)) return neg(b);
    if (a->kind == K::NUM && b->kind == K::NUM) return num(a->value - b->value);
    return mk(K::SUB, a, b);
}
Ptr mul(Ptr a, Ptr b) {
    if (is_num(a, 0.0) || is_num(b, 0.0)) return num(0.0);
    if (is_num(a, 1.0)) return b;
    if (is_num(b, 1.0)) return a;
    if (a->kind == K::NUM && b->kind == K::NUM) return num(a->value * b->value);
    return mk(K::MUL, a, b);
}
Ptr div(Ptr a, Ptr b) {
    if (is_num(a, 0.0)) return num(0.0);
    if (is_num(b, 1.0)) return a;
    return mk(K::DIV, a, b);
}

Ptr d(const Ptr& p) {
    const Expression::Node& n = *p;
    if (!has_s(p)) return num(0.0);
    switch (n.kind) {
        case K::S: return num(1.0);
        case K::ADD: return add(d(n.a), d(n.b));
        case K::SUB: return sub(d(n.a), d(n.b));
        case K::MUL: return add(mul(d(n.a), n.b), mul(n.a, d(n.b)));
        case K::DIV: return div(sub(mul(d(n.a), n.b), mul(n.a, d(n.b))), mk(K::POW, n.b, num(2.0)));
        case K::NEG: return neg(d(n.a));
        case K::POW:
            if (!has_s(n.b)) {
                // c a^(c-1) a'
                Ptr c1 = n.b->kind == K::NUM ? num(n.b->value - 1.0) : sub(n.b, num(1.0));
                return mul(mul(n.b, mk(K::POW, n.a, c1)), d(n.a));
            }
            // a^b (b' log a + b a'/a)
            return mul(p, add(mul(d(n.b), mk(K::LOG, n.a)), div(mul(n.b, d(n.a)), n.a)));
        case K::SIN: return mul(mk(K::COS, n.a), d(n.a));
        case K::COS: return mul(neg(mk(K::SIN, n.a)), d(n.a));
        case K::EXP: return mul(p, d(n.a));
        case K::SINH: return mul(mk(K::COSH, n.a), d(n.a));
        case K::COSH: return mul(mk(K::SINH, n.a), d(n.a));
        case K::LOG: return div(d(n.a), n.a);
        default: return num(0.0);
    }
}

// binding strength: sums 1, products 2, negation 3, powers 4, atoms 5
int prec(const Expression::Node& n) {
    switch (n.kind) {
        case K::ADD:
        case K::SUB: return 1;
        case K::MUL:
        case K::DIV: return 2;
        case K::NEG: return 3;
        case K::POW: return 4;
        case K::NUM: return std::signbit(n.value) ? 3 : 5;
        default: return 5;
    }
}

void print(const Expression::Node& n, std::string& out);

void wrap(const Expression::Node& n, int need, std::string& out) {
    if (prec(n) < need) {
        out += '(';
        print(n, out);
        out += ')';
    } else {
        print(n, out);
    }
}

void print(const Expression::Node& n, std::string& out) {
    switch (n.kind) {
        case K::NUM: {
            if (std::signbit(n.value)) {
                out += '-';
                Expression::Node pos{K::NUM, -n.value, nullptr, nullptr};
                print(pos, out);
                return;
            }
            char buf[64];
            const auto r = std::to_chars(buf, buf + sizeof buf, n.value);
            out.append(buf, r.ptr);
            return;
        }
        case K::S: out += 's'; return;
        case K::PI: out += "pi"; return;
        case K::L: out += 'l'; return;
        case K::ADD:
            wrap(*n.a, 1, out);
            out += " + ";
            wrap(*n.b, 2, out);
            return;
        case K::SUB:
            wrap(*n.a, 1, out);
            out += " - ";
            wrap(*n.b, 2, out);
            return;
        case K::MUL:
            wrap(*n.a, 2, out);
            out += '*';
            wrap(*n.b, 3, out);
            return;
        case K::DIV:
            wrap(*n.a, 2, out);
            out += '/';
            wrap(*n.b, 3, out);
            return;
        case K::NEG:
            out += '-';
            wrap(*n.a, 3, out);
            return;
        case K::POW:
            wrap(*n.a, 5, out);
            out += '^';
            wrap(*n.b, 3, out);
            return;
        default: break;
    }
    static const char* names[] = {"sin", "cos", "exp", "sinh", "cosh", "log"};
    out += names[static_cast<int>(n.kind) - static_cast<int>(K::SIN)];
    out += '(';
    print(*n.a, out);
    out += ')';
}

}  // namespace

Expression::Expression() : root_(num(0.0)) {}

Expression Expression::parse(const std::string& text) { return Expression(Parser(text).run()); }

Expression Expression::number(double v) { return Expression(num(v)); }

double Expression::eval(double s, double l) const { return ev(*root_, s, l); }

Expression Expression::derivative() const { return Expression(d(root_)); }

std::string Expression::str() const {
    std::string out;
    print(*root_, out);
    return out;
}

bool Expression::depends_on_s() const { return has_s(root_); }

BoundaryTrace expression_trace(int side, const Expression& e, double l) {
    const Expression de = e.derivative();
    return BoundaryTrace(
        side, [e, l](double s) { return e.eval(s, l); }, [de, l](double s) { return de.eval(s, l); });
}

}  // namespace tri
