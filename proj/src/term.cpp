#include "meadow/term.hpp"

#include "meadow/errors.hpp"

#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace meadow {

// A numeral chain of length n >= 1 is stored as an Add node with
// `numeral == n` and no children.
struct Term::Node {
    Op op = Op::Zero;
    std::string name;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
    BigInt numeral = 0;
    bool has_children = false;
};

namespace {

template <typename F>
Term rebuild(const Term& t, F&& leaf_or_node) {
    std::unordered_map<const void*, Term> memo;
    std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
        if (auto it = memo.find(u.identity()); it != memo.end()) return it->second;
        Term out = leaf_or_node(u, go);
        memo.emplace(u.identity(), out);
        return out;
    };
    return go(t);
}

}  // namespace

const char* op_name(Op op) noexcept {
    switch (op) {
        case Op::Zero: return "zero";
        case Op::One: return "one";
        case Op::Var: return "var";
        case Op::Add: return "add";
        case Op::Mul: return "mul";
        case Op::Neg: return "neg";
        case Op::Div: return "div";
        case Op::Inv: return "inv";
    }
    return "?";
}

Term::Term() {
    static const auto zero_node = std::make_shared<const Node>();
    node_ = zero_node;
}

Term Term::zero() { return Term(); }

Term Term::one() {
    static const auto one_node = [] {
        auto n = std::make_shared<Node>();
        n->op = Op::One;
        return std::shared_ptr<const Node>(std::move(n));
    }();
    return Term(one_node);
}

Term Term::var(std::string name) {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->name = std::move(name);
    return Term(std::shared_ptr<const Node>(std::move(n)));
}

Term Term::numeral_chain(BigInt n) {
    if (n == 0) return Term();
    auto node = std::make_shared<Node>();
    node->op = Op::Add;
    node->numeral = std::move(n);
    return Term(std::shared_ptr<const Node>(std::move(node)));
}

Term add(Term lhs, Term rhs) {
    if (rhs.op() == Op::One) {
        if (auto n = lhs.numeral_value()) return Term::numeral_chain(*n + 1);
    }
    auto node = std::make_shared<Term::Node>();
    node->op = Op::Add;
    node->a = std::move(lhs.node_);
    node->b = std::move(rhs.node_);
    node->has_children = true;
    return Term(std::shared_ptr<const Term::Node>(std::move(node)));
}

#define MEADOW_BINARY(fn, kind)                                                 \
    Term fn(Term lhs, Term rhs) {                                               \
        auto node = std::make_shared<Term::Node>();                             \
        node->op = kind;                                                        \
        node->a = std::move(lhs.node_);                                               \
        node->b = std::move(rhs.node_);                                               \
        node->has_children = true;                                              \
        return Term(std::shared_ptr<const Term::Node>(std::move(node)));        \
    }

MEADOW_BINARY(mul, Op::Mul)
MEADOW_BINARY(div, Op::Div)
#undef MEADOW_BINARY

#define MEADOW_UNARY(fn, kind)                                                  \
    Term fn(Term arg) {                                                         \
        auto node = std::make_shared<Term::Node>();                             \
        node->op = kind;                                                        \
        node->a = std::move(arg.node_);                                               \
        node->has_children = true;                                              \
        return Term(std::shared_ptr<const Term::Node>(std::move(node)));        \
    }

MEADOW_UNARY(neg, Op::Neg)
MEADOW_UNARY(inv, Op::Inv)
#undef MEADOW_UNARY

Op Term::op() const noexcept { return node_->op; }

Term Term::lhs() const {
    if (op() != Op::Add && op() != Op::Mul && op() != Op::Div)
        throw std::logic_error(std::string("lhs() on ") + op_name(op()));
    if (!node_->has_children) {
        return numeral_chain(node_->numeral - 1);
    }
    return Term(node_->a);
}

Term Term::rhs() const {
    if (op() != Op::Add && op() != Op::Mul && op() != Op::Div)
        throw std::logic_error(std::string("rhs() on ") + op_name(op()));
    if (!node_->has_children) return one();
    return Term(node_->b);
}

Term Term::arg() const {
    if (op() != Op::Neg && op() != Op::Inv)
        throw std::logic_error(std::string("arg() on ") + op_name(op()));
    return Term(node_->a);
}

const std::string& Term::name() const {
    if (op() != Op::Var) throw std::logic_error(std::string("name() on ") + op_name(op()));
    return node_->name;
}

std::optional<BigInt> Term::numeral_value() const {
    if (op() == Op::Zero) return BigInt(0);
    if (op() == Op::Add && !node_->has_children) return node_->numeral;
    return std::nullopt;
}

BigInt Term::size() const {
    std::unordered_map<const void*, BigInt> memo;
    std::function<BigInt(const Term&)> go = [&](const Term& u) -> BigInt {
        if (auto it = memo.find(u.identity()); it != memo.end()) return it->second;
        BigInt s;
        if (auto n = u.numeral_value()) {
            s = 2 * *n + 1;
        } else {
            switch (u.op()) {
                case Op::Zero:
                case Op::One:
                case Op::Var: s = 1; break;
                case Op::Neg:
                case Op::Inv: s = 1 + go(u.arg()); break;
                default: s = 1 + go(u.lhs()) + go(u.rhs()); break;
            }
        }
        memo.emplace(u.identity(), s);
        return s;
    };
    return go(*this);
}

bool Term::contains(Op wanted) const {
    std::unordered_set<const void*> seen;
    std::function<bool(const Term&)> go = [&](const Term& u) -> bool {
        if (!seen.insert(u.identity()).second) return false;
        if (u.op() == wanted) return true;
        if (u.numeral_value()) return wanted == Op::Zero || wanted == Op::One || wanted == Op::Add;
        switch (u.op()) {
            case Op::Zero:
            case Op::One:
            case Op::Var: return false;
            case Op::Neg:
            case Op::Inv: return go(u.arg());
            default: return go(u.lhs()) || go(u.rhs());
        }
    };
    return go(*this);
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op()) return false;
    auto na = a.numeral_value();
    auto nb = b.numeral_value();
    if (na || nb) return na && nb && *na == *nb;
    switch (a.op()) {
        case Op::Zero:
        case Op::One: return true;
        case Op::Var: return a.name() == b.name();
        case Op::Neg:
        case Op::Inv: return a.arg() == b.arg();
        default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
}

Term mk_numeral(const BigInt& n) {
    if (n < 0) return neg(Term::numeral_chain(-n));
    return Term::numeral_chain(n);
}

Term power(const Term& t, std::uint64_t n) {
    Term out = Term::one();
    for (std::uint64_t i = 0; i < n; ++i) out = mul(out, t);
    return out;
}

Term repeated_product(const Term& t, std::uint64_t n) {
    if (n == 0) return Term::one();
    Term out = t;
    for (std::uint64_t i = 1; i < n; ++i) out = mul(out, t);
    return out;
}

void require_divisive(const Term& t, const char* operation) {
    if (!t.is_divisive())
        throw MixedSignature(std::string(operation) + " expects a divisive term (no inv)");
}

bool is_fraction(const Term& t) {
    require_divisive(t, "is_fraction");
    return t.op() == Op::Div;
}

bool is_simple_fraction(const Term& t) {
    require_divisive(t, "is_simple_fraction");
    return t.op() == Op::Div && !t.lhs().contains(Op::Div) && !t.rhs().contains(Op::Div);
}

bool is_closed(const Term& t) { return !t.contains(Op::Var); }

Term wrap_as_fraction(const Term& t) { return div(t, Term::one()); }

Term substitute(const Term& t, const Binding& binding) {
    if (binding.empty()) return t;
    return rebuild(t, [&](const Term& u, auto& go) -> Term {
        if (u.numeral_value()) return u;
        switch (u.op()) {
            case Op::Zero:
            case Op::One: return u;
            case Op::Var: {
                auto it = binding.find(u.name());
                return it == binding.end() ? u : it->second;
            }
            case Op::Add: return add(go(u.lhs()), go(u.rhs()));
            case Op::Mul: return mul(go(u.lhs()), go(u.rhs()));
            case Op::Div: return div(go(u.lhs()), go(u.rhs()));
            case Op::Neg: return neg(go(u.arg()));
            case Op::Inv: return inv(go(u.arg()));
        }
        return u;
    });
}

Term to_inversive(const Term& t) {
    if (!t.is_divisive()) throw MixedSignature("to_inversive expects a divisive term");
    return rebuild(t, [](const Term& u, auto& go) -> Term {
        if (u.numeral_value()) return u;
        switch (u.op()) {
            case Op::Add: return add(go(u.lhs()), go(u.rhs()));
            case Op::Mul: return mul(go(u.lhs()), go(u.rhs()));
            case Op::Div: return mul(go(u.lhs()), inv(go(u.rhs())));
            case Op::Neg: return neg(go(u.arg()));
            default: return u;
        }
    });
}

Term to_divisive(const Term& t) {
    if (!t.is_inversive()) throw MixedSignature("to_divisive expects an inversive term");
    return rebuild(t, [](const Term& u, auto& go) -> Term {
        if (u.numeral_value()) return u;
        switch (u.op()) {
            case Op::Add: return add(go(u.lhs()), go(u.rhs()));
            case Op::Mul: return mul(go(u.lhs()), go(u.rhs()));
            case Op::Inv: return div(Term::one(), go(u.arg()));
            case Op::Neg: return neg(go(u.arg()));
            default: return u;
        }
    });
}

std::set<std::string> variables(const Term& t) {
    std::set<std::string> out;
    std::unordered_set<const void*> seen;
    std::function<void(const Term&)> go = [&](const Term& u) {
        if (!seen.insert(u.identity()).second || u.numeral_value()) return;
        switch (u.op()) {
            case Op::Zero:
            case Op::One: return;
            case Op::Var: out.insert(u.name()); return;
            case Op::Neg:
            case Op::Inv: go(u.arg()); return;
            default: go(u.lhs()); go(u.rhs()); return;
        }
    };
    go(t);
    return out;
}

}  // namespace meadow
