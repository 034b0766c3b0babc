#include "meadow/cli.hpp"

#include "meadow/errors.hpp"
#include "meadow/fraction_transforms.hpp"
#include "meadow/identities.hpp"
#include "meadow/models.hpp"
#include "meadow/normal_forms.hpp"
#include "meadow/polynomial.hpp"
#include "meadow/syntax.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

namespace meadow::cli {

namespace {

struct Options {
    std::string model = "q0";
    std::string assign;
    std::string format = "text";
    std::optional<std::uint64_t> seed;
    std::string strategy;
    std::optional<std::uint64_t> samples;
    bool inversive = false;
    unsigned workers = 1;
};

Signature signature_of(const Options& o) { return o.inversive ? Signature::Inversive : Signature::Divisive; }

std::string strategy_name(const Strategy& s) { return std::holds_alternative<Exhaustive>(s) ? "exhaustive" : "sampled"; }

Strategy resolve_strategy(const Options& o, const MeadowModel& m) {
    std::string name = o.strategy;
    if (name.empty()) name = m.is_finite() ? "exhaustive" : "sampled";
    if (name == "exhaustive") return Exhaustive{};
    return Sampled{o.samples.value_or(10000), o.seed.value_or(0)};
}

// ---------------------------------------------------------------- report pieces

Json assignment_json(const MeadowModel& m, const Assignment& a) {
    Json out = Json::object();
    for (const auto& [name, v] : a) out[name] = m.format(v);
    return out;
}

Json check_json(const MeadowModel& m, const Term& lhs, const Term& rhs, const Strategy& strategy,
                const CheckReport& r) {
    Json out;
    out["model"] = r.model;
    out["equation"] = print(lhs) + " = " + print(rhs);
    out["strategy"] = strategy_name(strategy);
    if (r.seed) out["seed"] = *r.seed;
    out["verdict"] = verdict_name(r.verdict);
    out["evaluations"] = r.evaluations;
    if (r.counterexample) {
        out["counterexample"] = assignment_json(m, *r.counterexample);
        out["lhs_value"] = m.format(*r.lhs_value);
        out["rhs_value"] = m.format(*r.rhs_value);
    }
    return out;
}

std::string scalar_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "-";
    return j.dump();
}

// Indented "key: value" rendering of a report; used for every command's text output.
void render_text(const Json& j, std::ostream& out, const std::string& pad) {
    for (const auto& [key, val] : j.items()) {
        if (val.is_object()) {
            bool flat = !val.empty();
            for (const auto& [k, v] : val.items()) flat = flat && !v.is_structured();
            if (flat) {
                // Small maps such as assignments fit on one line.
                std::string line;
                for (const auto& [k, v] : val.items()) line += (line.empty() ? "" : ", ") + k + " = " + scalar_text(v);
                out << pad << key << ": " << line << "\n";
            } else {
                out << pad << key << ":\n";
                render_text(val, out, pad + "  ");
            }
        } else if (val.is_array()) {
            bool scalars = true;
            for (const auto& v : val) scalars = scalars && !v.is_structured();
            if (scalars) {
                std::string line;
                for (const auto& v : val) line += (line.empty() ? "" : ", ") + scalar_text(v);
                out << pad << key << ": " << line << "\n";
                continue;
            }
            out << pad << key << ":\n";
            for (const auto& item : val) {
                std::ostringstream block;
                render_text(item, block, "");
                std::istringstream lines(block.str());
                std::string line;
                bool first = true;
                while (std::getline(lines, line)) {
                    out << pad << (first ? "- " : "  ") << line << "\n";
                    first = false;
                }
            }
        } else {
            out << pad << key << ": " << scalar_text(val) << "\n";
        }
    }
}

void emit(const Options& o, const Json& report, std::ostream& out) {
    if (o.format == "json") {
        out << report.dump(2) << "\n";
    } else {
        render_text(report, out, "");
    }
}

int exit_code(Verdict v) { return v == Verdict::Refuted ? 1 : 0; }

// ---------------------------------------------------------------- commands

int cmd_parse(const Options& o, const std::string& text, std::ostream& out) {
    const Term t = parse(text, signature_of(o));
    if (o.format == "json") {
        Json j;
        j["term"] = print(t);
        j["tree"] = to_json(t);
        out << j.dump(2) << "\n";
    } else {
        out << print(t) << "\n";
    }
    return 0;
}

int cmd_eval(const Options& o, const std::string& text, std::ostream& out) {
    const ModelPtr m = parse_model(o.model);
    const Term t = parse(text, signature_of(o));
    const Assignment a = o.assign.empty() ? Assignment{} : parse_assignment(*m, o.assign);
    const Value v = eval(*m, t, a);
    if (o.format == "json") {
        Json j;
        j["model"] = m->name();
        j["term"] = print(t);
        if (!a.empty()) j["assignment"] = assignment_json(*m, a);
        j["value"] = m->format(v);
        out << j.dump(2) << "\n";
    } else {
        out << m->format(v) << "\n";
    }
    return 0;
}

int cmd_normalize(const Options& o, const std::string& text, const std::string& canonical_var, bool ring,
                  bool tidy_flag, bool model_given, std::ostream& out) {
    Term t = parse(text, signature_of(o));
    if (o.inversive) t = to_divisive(t);
    Json j;
    j["term"] = print(t);
    if (!canonical_var.empty()) {
        const UniPoly f = to_canonical(t, canonical_var);
        j["canonical"] = f.str();
        j["coefficients"] = Json::array();
        for (const auto& c : f.coefficients()) j["coefficients"].push_back(to_string(c));
        if (model_given) {
            const ModelPtr m = parse_model(o.model);
            const auto d = degree_over(*m, f);
            j["model"] = m->name();
            j["non_trivial"] = non_trivial_over(*m, f);
            j["constant"] = constant_over(*m, f);
            j["degree"] = d ? Json(*d) : Json("undefined");
        }
    } else if (ring) {
        j["value"] = to_string(cr_normal(t));
    } else {
        BasicTerm b = to_basic(t);
        if (tidy_flag) {
            const ModelPtr m = parse_model(model_given ? o.model : "mk:6");
            if (!m->is_finite()) throw BadSpecifier("--tidy needs a finite --model to re-check against");
            b = tidy(b, *m);
            j["checked_in"] = Json::array({"q0", m->name()});
        }
        j["basic"] = b.str();
        j["result"] = print(b.render());
    }
    emit(o, j, out);
    return 0;
}

std::pair<Term, Term> parse_equation(const std::string& text, Signature sig) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || text.find('=', eq + 1) != std::string::npos)
        throw BadSpecifier("expected one equation 'lhs = rhs', got '" + text + "'");
    return {parse(text.substr(0, eq), sig), parse(text.substr(eq + 1), sig)};
}

int cmd_check(const Options& o, const std::string& text, std::ostream& out) {
    const ModelPtr m = parse_model(o.model);
    const auto [lhs, rhs] = parse_equation(text, signature_of(o));
    const Strategy s = resolve_strategy(o, *m);
    const CheckReport r = check_eq(*m, lhs, rhs, s, o.workers);
    emit(o, check_json(*m, lhs, rhs, s, r), out);
    return exit_code(r.verdict);
}

int cmd_simplify(const Options& o, const std::string& text, const std::string& target, std::ostream& out) {
    const ModelPtr m = parse_model(o.model);
    Term t = parse(text, signature_of(o));
    if (o.inversive) t = to_divisive(t);
    Json j;
    j["model"] = m->name();
    j["target"] = target;
    j["term"] = print(t);
    Term result;
    if (target == "sum-of-fractions") {
        const SumOfSimpleFractions s = to_sum_of_simple_fractions(t);
        j["summands"] = s.summands.size();
        j["fractions"] = s.str();
        result = s.render();
    } else if (m->is_finite()) {
        const ExponentPair p = exponent_pair_for(*m);
        j["exponents"] = Json::array({p.n, p.m});
        j["inverse_exponent"] = p.inverse_exponent();
        result = to_simple_fraction_finite(*m, t);
    } else {
        const SimpleClosedFraction f = closed_to_simple_fraction_q0(t);
        j["fraction"] = f.str();
        result = f.render();
    }
    j["result"] = print(result);
    const Strategy s = resolve_strategy(o, *m);
    const CheckReport r = check_eq(*m, t, result, s, o.workers);
    j["check"] = check_json(*m, t, result, s, r);
    j["check"].erase("equation");
    emit(o, j, out);
    return exit_code(r.verdict);
}

Json falsifier_json(const UniPoly& f, const UniPoly& g) {
    const FalsifierWitness w = falsify_simple_fraction_claim(f, g);
    Json j;
    auto group = [](const std::string& s) { return s.find(' ') == std::string::npos ? s : "(" + s + ")"; };
    j["claim"] = "1 + 1/x = " + group(f.str()) + "/" + group(g.str());
    j["witness"] = "x = " + w.point.str();
    j["lhs_value"] = w.lhs_value.str();
    j["rhs_value"] = w.rhs_value.str();
    return j;
}

int cmd_falsify(const Options& o, const std::string& f_text, const std::string& g_text, std::ostream& out) {
    const UniPoly f = to_canonical(parse(f_text), "x");
    const UniPoly g = to_canonical(parse(g_text), "x");
    Json j = falsifier_json(f, g);
    j["model"] = "q0";
    emit(o, j, out);
    return 0;
}

int cmd_char(const Options& o, std::uint64_t bound, std::ostream& out) {
    const ModelPtr m = parse_model(o.model);
    const auto c = characteristic(*m, bound);
    Json j;
    j["model"] = m->name();
    j["characteristic"] = c ? Json(*c) : Json("unknown");
    if (!c) j["search_bound"] = bound;
    emit(o, j, out);
    return 0;
}

// ---------------------------------------------------------------- demos

Strategy demo_strategy(const Options& o, const MeadowModel& m) {
    if (m.is_finite()) return Exhaustive{};
    return Sampled{o.samples.value_or(10000), o.seed.value_or(0)};
}

Json demo_omega(const Options& o) {
    const Term lhs = parse("(1 - 2/2)*(x^2 - x)");
    const Term rhs = Term::zero();
    Json j;
    j["demo"] = "omega";
    j["equation"] = print(lhs) + " = 0";
    j["closed_instances"] = Json::array();
    for (const char* spec : {"q0", "mk:2", "mk:6", "gf:2^2"}) {
        const ModelPtr m = parse_model(spec);
        std::uint64_t zeros = 0;
        for (int k = -20; k <= 20; ++k) {
            const Term instance = substitute(lhs, {{"x", mk_numeral(k)}});
            if (eval(*m, instance) == m->zero()) ++zeros;
        }
        Json row;
        row["model"] = m->name();
        row["instances"] = "x = k for -20 <= k <= 20";
        row["zero"] = std::to_string(zeros) + "/41";
        j["closed_instances"].push_back(row);
    }
    j["open_equation"] = Json::array();
    for (const char* spec : {"q0", "mk:2", "mk:6", "gf:2^2"}) {
        const ModelPtr m = parse_model(spec);
        const Strategy s = demo_strategy(o, *m);
        Json c = check_json(*m, lhs, rhs, s, check_eq(*m, lhs, rhs, s, o.workers));
        c.erase("equation");
        j["open_equation"].push_back(c);
    }
    return j;
}

Json demo_separation() {
    const Term t = parse("1 + 1/2");
    const ModelPtr q = q0();
    const ModelPtr m2 = mk(2);
    Json j;
    j["demo"] = "separation";
    j["term"] = print(t);
    j["values"] = Json::array({Json{{"model", "q0"}, {"value", q->format(eval(*q, t))}},
                               Json{{"model", "mk:2"}, {"value", m2->format(eval(*m2, t))}}});
    const Term in_q0 = closed_to_simple_fraction_q0(t).render();
    const Term in_m2 = to_simple_fraction_finite(*m2, t);
    j["simple_fractions"] = Json::array(
        {Json{{"from", "q0"},
              {"fraction", print(in_q0)},
              {"value_in_q0", q->format(eval(*q, in_q0))},
              {"value_in_mk:2", m2->format(eval(*m2, in_q0))}},
         Json{{"from", "mk:2"},
              {"fraction", print(in_m2)},
              {"value_in_q0", q->format(eval(*q, in_m2))},
              {"value_in_mk:2", m2->format(eval(*m2, in_m2))}}});
    return j;
}

Json demo_finite_simple(const Options& o, bool model_given) {
    std::vector<std::string> specs{"mk:2", "mk:3", "mk:6", "gf:2^2"};
    if (model_given) specs = {o.model};
    Json j;
    j["demo"] = "finite-simple";
    j["models"] = Json::array();
    const Term x = Term::var("x");
    const Term example = parse("1 + 1/x");
    for (const auto& spec : specs) {
        const ModelPtr m = parse_model(spec);
        if (!m->is_finite()) throw BadSpecifier("finite-simple needs a finite model, got " + m->name());
        const ExponentPair p = exponent_pair_for(*m);
        const ExponentPair searched = find_annihilating_exponents(*m);
        const Term lhs = div(Term::one(), x);
        const Term rhs = repeated_product(x, p.inverse_exponent());
        const CheckReport r = check_eq(*m, lhs, rhs, Exhaustive{}, o.workers);
        const Term simple = to_simple_fraction_finite(*m, example);
        const CheckReport r2 = check_eq(*m, example, simple, Exhaustive{}, o.workers);
        Json row;
        row["model"] = m->name();
        row["exponents"] = Json::array({p.n, p.m});
        row["searched_exponents"] = Json::array({searched.n, searched.m});
        row["inverse_exponent"] = p.inverse_exponent();
        row["identity"] = print(lhs) + " = " + print(rhs);
        row["identity_check"] = verdict_name(r.verdict);
        row["example"] = print(example) + " = " + print(simple);
        row["example_check"] = verdict_name(r2.verdict);
        j["models"].push_back(row);
    }
    return j;
}

Json demo_sum_of_fractions(const Options& o) {
    Json j;
    j["demo"] = "sum-of-fractions";
    const std::vector<ModelPtr> models{mk(6), gf(2, 2), q0()};
    auto verdicts = [&](const Term& lhs, const Term& rhs) {
        Json row = Json::object();
        for (const auto& m : models) row[m->name()] = verdict_name(check_eq(*m, lhs, rhs, demo_strategy(o, *m), o.workers).verdict);
        return row;
    };
    j["decompositions"] = Json::array();
    for (const char* text : {"1/(1/x)", "1/x + 1/y", "1/(1/x + 1/y)"}) {
        const Term t = parse(text);
        const SumOfSimpleFractions s = to_sum_of_simple_fractions(t);
        Json row;
        row["term"] = print(t);
        row["summands"] = s.summands.size();
        row["fractions"] = s.str();
        row["checks"] = verdicts(t, s.render());
        j["decompositions"].push_back(row);
    }
    j["guard_lemmas"] = Json::array();
    for (const auto& eq : guard_lemmas()) {
        Json row;
        row["name"] = eq.name;
        row["equation"] = print(eq.lhs) + " = " + print(eq.rhs);
        row["checks"] = verdicts(eq.lhs, eq.rhs);
        j["guard_lemmas"].push_back(row);
    }
    // 1/x + 1/y needs two fractions: the natural single one fails where x = 0.
    const Term two = parse("1/x + 1/y");
    const Term one = parse("(y + x)/(x*y)");
    const ModelPtr q = q0();
    const Assignment at{{"x", Value(Rational(0))}, {"y", Value(Rational(1))}};
    const Value lv = eval(*q, two, at);
    const Value rv = eval(*q, one, at);
    j["single_fraction_candidate"] = Json{{"equation", print(two) + " = " + print(one)},
                                          {"model", "q0"},
                                          {"assignment", assignment_json(*q, at)},
                                          {"lhs_value", q->format(lv)},
                                          {"rhs_value", q->format(rv)},
                                          {"verdict", lv == rv ? "not refuted" : "Refuted"}};
    return j;
}

Json demo_falsify_q0() {
    Json j;
    j["demo"] = "falsify-q0";
    j["candidates"] = Json::array();
    for (const auto& [f, g] : std::vector<std::pair<const char*, const char*>>{{"1", "1"}, {"2", "1"}, {"x + 1", "x"}})
        j["candidates"].push_back(falsifier_json(to_canonical(parse(f), "x"), to_canonical(parse(g), "x")));
    return j;
}

int cmd_demo(const Options& o, const std::string& name, bool model_given, std::ostream& out) {
    Json j;
    if (name == "omega") j = demo_omega(o);
    if (name == "separation") j = demo_separation();
    if (name == "finite-simple") j = demo_finite_simple(o, model_given);
    if (name == "sum-of-fractions") j = demo_sum_of_fractions(o);
    if (name == "falsify-q0") j = demo_falsify_q0();
    emit(o, j, out);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Meadow arithmetic: terms with total division (x/0 = 0)", "meadow"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--model", o.model, "q0, mk:<k> or gf:<p>^<n>");
    app.add_option("--assign", o.assign, "variable values, e.g. x=3/4,y=-2");
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", o.seed, "seed for sampled checks (default 0)");
    app.add_option("--strategy", o.strategy, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    app.add_option("--samples", o.samples, "sample count (default 10000)");
    app.add_option("--workers", o.workers, "threads for exhaustive checks")->check(CLI::Range(1u, 256u));
    app.add_flag("--inversive", o.inversive, "read terms over inv(...) instead of /");

    std::string term;
    std::string f_text;
    std::string g_text;
    std::string canonical_var;
    std::string target = "simple-fraction";
    std::string demo_name;
    bool basic = false;
    bool ring = false;
    bool tidy_flag = false;
    std::uint64_t bound = 1u << 20;

    auto* parse_cmd = app.add_subcommand("parse", "parse and print a term");
    parse_cmd->add_option("term", term)->required();
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a term in a model");
    eval_cmd->add_option("term", term)->required();
    auto* normalize_cmd = app.add_subcommand("normalize", "basic term, ring value or canonical polynomial");
    normalize_cmd->add_option("term", term)->required();
    auto* basic_flag = normalize_cmd->add_flag("--basic", basic, "closed term to a sum of numeral fractions (default)");
    auto* canonical_opt = normalize_cmd->add_option("--canonical", canonical_var, "polynomial in this variable");
    auto* ring_flag = normalize_cmd->add_flag("--ring", ring, "closed division-free term to an integer");
    normalize_cmd->add_flag("--tidy", tidy_flag, "sort and cancel, re-checked in q0 and a finite model");
    basic_flag->excludes(canonical_opt)->excludes(ring_flag);
    canonical_opt->excludes(ring_flag);
    auto* check_cmd = app.add_subcommand("check", "check an equation 'lhs = rhs' in a model");
    check_cmd->add_option("equation", term)->required();
    auto* simplify_cmd = app.add_subcommand("simplify", "transform to a simple fraction or a sum of them");
    simplify_cmd->add_option("term", term)->required();
    simplify_cmd->add_option("--target", target)->check(CLI::IsMember({"simple-fraction", "sum-of-fractions"}));
    auto* falsify_cmd = app.add_subcommand("falsify", "refute 1 + 1/x = f/g in q0");
    falsify_cmd->add_option("f", f_text)->required();
    falsify_cmd->add_option("g", g_text)->required();
    auto* char_cmd = app.add_subcommand("char", "characteristic of a model");
    char_cmd->add_option("--bound", bound, "search bound");
    auto* demo_cmd = app.add_subcommand("demo", "scripted scenarios");
    demo_cmd->add_option("name", demo_name)
        ->required()
        ->check(CLI::IsMember({"omega", "separation", "finite-simple", "sum-of-fractions", "falsify-q0"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const bool model_given = app.count("--model") > 0;
    try {
        if (*parse_cmd) return cmd_parse(o, term, out);
        if (*eval_cmd) return cmd_eval(o, term, out);
        if (*normalize_cmd) return cmd_normalize(o, term, canonical_var, ring, tidy_flag, model_given, out);
        if (*check_cmd) return cmd_check(o, term, out);
        if (*simplify_cmd) return cmd_simplify(o, term, target, out);
        if (*falsify_cmd) return cmd_falsify(o, f_text, g_text, out);
        if (*char_cmd) return cmd_char(o, bound, out);
        if (*demo_cmd) return cmd_demo(o, demo_name, model_given, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace meadow::cli
