#include "meadow/syntax.hpp"

#include "meadow/errors.hpp"

#include <cctype>
#include <functional>
#include <vector>

namespace meadow {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view in) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (in[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < in.size()) {
        const unsigned char c = static_cast<unsigned char>(in[i]);
        if (std::isspace(c)) {
            advance(1);
            continue;
        }
        const std::size_t tl = line;
        const std::size_t tc = col;
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < in.size() && std::isdigit(static_cast<unsigned char>(in[j]))) ++j;
            out.push_back({Tok::Int, std::string(in.substr(i, j - i)), tl, tc});
            advance(j - i);
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < in.size() &&
                   (std::isalnum(static_cast<unsigned char>(in[j])) || in[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, std::string(in.substr(i, j - i)), tl, tc});
            advance(j - i);
            continue;
        }
        Tok kind;
        switch (c) {
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '/': kind = Tok::Slash; break;
            case '^': kind = Tok::Caret; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            default:
                throw ParseError(tl, tc, "term", "'" + std::string(1, in[i]) + "'");
        }
        out.push_back({kind, std::string(1, in[i]), tl, tc});
        advance(1);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

constexpr std::uint64_t kMaxExponent = 1u << 16;

class Parser {
public:
    Parser(std::vector<Token> toks, Signature sig) : toks_(std::move(toks)), sig_(sig) {}

    Term parse_all() {
        Term t = sum();
        if (peek().kind != Tok::End) fail("operator or end of input");
        return t;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw ParseError(t.line, t.column, expected, describe(t));
    }

    void expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail(what);
        take();
    }

    Term sum() {
        Term acc = prod();
        for (;;) {
            if (peek().kind == Tok::Plus) {
                take();
                acc = add(acc, prod());
            } else if (peek().kind == Tok::Minus) {
                take();
                acc = add(acc, neg(prod()));
            } else {
                return acc;
            }
        }
    }

    Term prod() {
        Term acc = unary();
        for (;;) {
            if (peek().kind == Tok::Star) {
                take();
                acc = mul(acc, unary());
            } else if (peek().kind == Tok::Slash) {
                const Token& t = take();
                if (sig_ == Signature::Inversive)
                    throw SignatureError(t.line, t.column, "'/' is not available in inversive mode");
                acc = div(acc, unary());
            } else {
                return acc;
            }
        }
    }

    Term unary() {
        if (peek().kind == Tok::Minus) {
            take();
            return neg(unary());
        }
        Term base = atom();
        if (peek().kind == Tok::Caret) {
            take();
            if (peek().kind != Tok::Int) fail("natural number exponent");
            const Token& t = take();
            const BigInt k(t.text);
            if (k > kMaxExponent)
                throw ParseError(t.line, t.column,
                                 "exponent at most " + std::to_string(kMaxExponent), describe(t));
            return power(base, static_cast<std::uint64_t>(k));
        }
        return base;
    }

    Term atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int: {
                take();
                const BigInt n(t.text);
                if (n == 1) return Term::one();
                return mk_numeral(n);
            }
            case Tok::Ident: {
                take();
                if (t.text == "inv") {
                    if (sig_ == Signature::Divisive)
                        throw SignatureError(t.line, t.column,
                                             "'inv' is not available in divisive mode");
                    expect(Tok::LParen, "'('");
                    Term a = sum();
                    expect(Tok::RParen, "')'");
                    return inv(a);
                }
                return Term::var(t.text);
            }
            case Tok::LParen: {
                take();
                Term a = sum();
                expect(Tok::RParen, "')'");
                return a;
            }
            default: fail("term");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Signature sig_;
};

enum Level { kSum = 0, kProd = 1, kUnary = 2, kAtom = 3 };

Level level_of(const Term& t) {
    if (auto n = t.numeral_value(); n && *n != 1) return kAtom;
    switch (t.op()) {
        case Op::Add: return kSum;
        case Op::Mul:
        case Op::Div: return kProd;
        case Op::Neg: return kUnary;
        default: return kAtom;
    }
}

void emit(const Term& t, Level ctx, std::string& out) {
    const Level own = level_of(t);
    const bool parens = own < ctx;
    if (parens) out += '(';
    if (auto n = t.numeral_value(); n && *n != 1) {
        out += to_string(*n);
    } else {
        switch (t.op()) {
            case Op::Zero: out += '0'; break;
            case Op::One: out += '1'; break;
            case Op::Var: out += t.name(); break;
            case Op::Add: {
                emit(t.lhs(), kSum, out);
                const Term r = t.rhs();
                if (r.op() == Op::Neg) {
                    out += " - ";
                    emit(r.arg(), kProd, out);
                } else {
                    out += " + ";
                    emit(r, kProd, out);
                }
                break;
            }
            case Op::Mul:
            case Op::Div:
                emit(t.lhs(), kProd, out);
                out += t.op() == Op::Mul ? '*' : '/';
                emit(t.rhs(), kUnary, out);
                break;
            case Op::Neg:
                out += '-';
                emit(t.arg(), kUnary, out);
                break;
            case Op::Inv:
                out += "inv(";
                emit(t.arg(), kSum, out);
                out += ')';
                break;
        }
    }
    if (parens) out += ')';
}

}  // namespace

Term parse(std::string_view input, Signature signature) {
    return Parser(lex(input), signature).parse_all();
}

std::string print(const Term& t) {
    std::string out;
    emit(t, kSum, out);
    return out;
}

Json to_json(const Term& t) {
    if (auto n = t.numeral_value(); n && *n != 0) {
        return Json{{"op", "numeral"}, {"value", to_string(*n)}};
    }
    Json j;
    j["op"] = op_name(t.op());
    switch (t.op()) {
        case Op::Zero:
        case Op::One: break;
        case Op::Var: j["name"] = t.name(); break;
        case Op::Neg:
        case Op::Inv: j["args"] = Json::array({to_json(t.arg())}); break;
        default: j["args"] = Json::array({to_json(t.lhs()), to_json(t.rhs())}); break;
    }
    return j;
}

Term term_from_json(const Json& j) {
    const std::string op = j.at("op").get<std::string>();
    auto arg = [&](std::size_t i) { return term_from_json(j.at("args").at(i)); };
    if (op == "zero") return Term::zero();
    if (op == "one") return Term::one();
    if (op == "var") return Term::var(j.at("name").get<std::string>());
    if (op == "numeral") return mk_numeral(BigInt(j.at("value").get<std::string>()));
    if (op == "add") return add(arg(0), arg(1));
    if (op == "mul") return mul(arg(0), arg(1));
    if (op == "div") return div(arg(0), arg(1));
    if (op == "neg") return neg(arg(0));
    if (op == "inv") return inv(arg(0));
    throw BadSpecifier("unknown term node '" + op + "'");
}

}  // namespace meadow
