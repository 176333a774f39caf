#include "sclplan/pddl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "sclplan/util/strings.hpp"

namespace sclplan::pddl {

namespace {

enum class Tok { LParen, RParen, Symbol, String, End };

struct Token {
    Tok kind;
    std::string text;  // lowercased for symbols, verbatim for strings
    int line = 1;
    int col = 1;
};

const char* tok_name(Tok k) {
    switch (k) {
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Symbol: return "symbol";
        case Tok::String: return "string";
        case Tok::End: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_trivia();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = src_[pos_];
        if (c == '(') {
            advance();
            t.kind = Tok::LParen;
            return t;
        }
        if (c == ')') {
            advance();
            t.kind = Tok::RParen;
            return t;
        }
        if (c == '"') {
            advance();
            std::string out;
            while (pos_ < src_.size() && src_[pos_] != '"') {
                char d = src_[pos_];
                if (d == '\\' && pos_ + 1 < src_.size()) {
                    advance();
                    d = src_[pos_];
                }
                out.push_back(d);
                advance();
            }
            if (pos_ >= src_.size())
                throw ParseError("unterminated string", t.line, t.col);
            advance();  // closing quote
            t.kind = Tok::String;
            t.text = std::move(out);
            return t;
        }
        std::string sym;
        while (pos_ < src_.size() && !is_delim(src_[pos_])) {
            sym.push_back(static_cast<char>(
                std::tolower(static_cast<unsigned char>(src_[pos_]))));
            advance();
        }
        t.kind = Tok::Symbol;
        t.text = std::move(sym);
        return t;
    }

private:
    static bool is_delim(char c) {
        return c == '(' || c == ')' || c == '"' || c == ';' ||
               std::isspace(static_cast<unsigned char>(c));
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == ';') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

    Token expect(Tok kind) {
        if (cur_.kind != kind)
            throw ParseError(std::string("expected ") + tok_name(kind) +
                                 ", got " + describe(cur_),
                             cur_.line, cur_.col);
        return take();
    }

    std::string expect_symbol(std::string_view what) {
        if (cur_.kind != Tok::Symbol)
            throw ParseError(std::string("expected ") + std::string(what) +
                                 ", got " + describe(cur_),
                             cur_.line, cur_.col);
        return take().text;
    }

    // Expects a specific keyword symbol such as "define" or ":domain".
    void expect_keyword(std::string_view kw) {
        if (cur_.kind != Tok::Symbol || cur_.text != kw)
            throw ParseError("expected '" + std::string(kw) + "', got " +
                                 describe(cur_),
                             cur_.line, cur_.col);
        take();
    }

    bool at(Tok kind) const { return cur_.kind == kind; }
    bool at_symbol(std::string_view s) const {
        return cur_.kind == Tok::Symbol && cur_.text == s;
    }
    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        cur_ = lex_.next();
        return t;
    }

    void expect_end() {
        if (cur_.kind != Tok::End)
            throw ParseError("expected end of input, got " + describe(cur_),
                             cur_.line, cur_.col);
    }

    static std::string describe(const Token& t) {
        if (t.kind == Tok::Symbol) return "'" + t.text + "'";
        return tok_name(t.kind);
    }

private:
    Lexer lex_;
    Token cur_;
};

// Parses `name name - type name ...` up to the closing paren, applying the
// trailing-type rule. Names without a dash group get `fallback`.
std::vector<Param> parse_typed_list(Parser& p, const std::string& fallback) {
    std::vector<Param> out;
    std::vector<std::string> pending;
    while (!p.at(Tok::RParen)) {
        if (p.at_symbol("-")) {
            p.take();
            std::string type = p.expect_symbol("type name");
            if (pending.empty())
                throw ParseError("dangling '-' with no names before it",
                                 p.peek().line, p.peek().col);
            for (auto& n : pending) out.push_back({n, type});
            pending.clear();
        } else {
            std::string name = p.expect_symbol("name");
            pending.push_back(name);
        }
    }
    for (auto& n : pending) out.push_back({n, fallback});
    return out;
}

Literal parse_literal(Parser& p) {
    p.expect(Tok::LParen);
    Literal lit;
    std::string head = p.expect_symbol("predicate name");
    if (head == "not") {
        p.expect(Tok::LParen);
        lit.negated = true;
        lit.predicate = p.expect_symbol("predicate name");
        while (!p.at(Tok::RParen)) lit.args.push_back(p.expect_symbol("argument"));
        p.expect(Tok::RParen);
        p.expect(Tok::RParen);
        return lit;
    }
    lit.predicate = head;
    while (!p.at(Tok::RParen)) lit.args.push_back(p.expect_symbol("argument"));
    p.expect(Tok::RParen);
    return lit;
}

// `(and lit...)` or a bare literal.
std::vector<Literal> parse_condition(Parser& p) {
    std::vector<Literal> lits;
    p.expect(Tok::LParen);
    if (p.at_symbol("and")) {
        p.take();
        while (!p.at(Tok::RParen)) lits.push_back(parse_literal(p));
        p.expect(Tok::RParen);
        return lits;
    }
    // Rewind is impossible with a single-token lookahead, so parse the bare
    // literal's remainder in place.
    Literal lit;
    std::string head = p.expect_symbol("predicate name");
    if (head == "not") {
        p.expect(Tok::LParen);
        lit.negated = true;
        lit.predicate = p.expect_symbol("predicate name");
        while (!p.at(Tok::RParen)) lit.args.push_back(p.expect_symbol("argument"));
        p.expect(Tok::RParen);
    } else {
        lit.predicate = head;
        while (!p.at(Tok::RParen)) lit.args.push_back(p.expect_symbol("argument"));
    }
    p.expect(Tok::RParen);
    lits.push_back(lit);
    return lits;
}

bool is_variable(const std::string& s) { return !s.empty() && s[0] == '?'; }

// Strips the '?' so schema params and literal args use bare names internally.
std::string var_name(const std::string& s) { return s.substr(1); }

void check_schema_literal(const Domain& d, const ActionSchema& a, Literal& lit,
                          bool in_effect) {
    if (lit.predicate == "=") {
        if (in_effect)
            throw SemanticError("action '" + a.name +
                                "': '=' cannot appear in effects");
        if (lit.args.size() != 2)
            throw SemanticError("action '" + a.name + "': '=' takes 2 arguments");
    } else {
        const PredicateSchema* ps = d.find_predicate(lit.predicate);
        if (!ps)
            throw SemanticError("action '" + a.name + "': undeclared predicate '" +
                                lit.predicate + "'");
        if (ps->arity() != lit.args.size())
            throw SemanticError("action '" + a.name + "': predicate '" +
                                lit.predicate + "' expects " +
                                std::to_string(ps->arity()) + " arguments, got " +
                                std::to_string(lit.args.size()));
    }
    for (auto& arg : lit.args) {
        if (!is_variable(arg))
            throw SemanticError("action '" + a.name + "': constant '" + arg +
                                "' in literal; only parameter variables are "
                                "supported");
        arg = var_name(arg);
        bool bound = false;
        for (const auto& prm : a.params)
            if (prm.name == arg) bound = true;
        if (!bound)
            throw SemanticError("action '" + a.name + "': variable '?" + arg +
                                "' not declared in :parameters");
    }
}

ActionSchema parse_action(Parser& p, const Domain& d) {
    ActionSchema a;
    a.name = p.expect_symbol("action name");
    while (!p.at(Tok::RParen)) {
        std::string key = p.expect_symbol("action section keyword");
        if (key == ":description") {
            a.description = p.expect(Tok::String).text;
        } else if (key == ":parameters") {
            p.expect(Tok::LParen);
            auto raw = parse_typed_list(p, "object");
            p.expect(Tok::RParen);
            for (auto& prm : raw) {
                if (!is_variable(prm.name))
                    throw SemanticError("action '" + a.name + "': parameter '" +
                                        prm.name + "' must start with '?'");
                a.params.push_back({var_name(prm.name), prm.type});
            }
        } else if (key == ":precondition") {
            a.precondition = parse_condition(p);
        } else if (key == ":effect") {
            for (auto& lit : parse_condition(p)) {
                if (lit.negated) {
                    lit.negated = false;
                    a.del_effects.push_back(lit);
                } else {
                    a.add_effects.push_back(lit);
                }
            }
        } else {
            throw ParseError("unknown action section '" + key + "'",
                             p.peek().line, p.peek().col);
        }
    }
    p.expect(Tok::RParen);

    std::set<std::string> seen;
    for (const auto& prm : a.params) {
        if (!seen.insert(prm.name).second)
            throw SemanticError("action '" + a.name + "': duplicate parameter '?" +
                                prm.name + "'");
        if (!d.type_declared(prm.type))
            throw SemanticError("action '" + a.name + "': undeclared type '" +
                                prm.type + "'");
    }
    for (auto& lit : a.precondition) check_schema_literal(d, a, lit, false);
    for (auto& lit : a.add_effects) check_schema_literal(d, a, lit, true);
    for (auto& lit : a.del_effects) check_schema_literal(d, a, lit, true);
    for (const auto& add : a.add_effects)
        for (const auto& del : a.del_effects)
            if (add.predicate == del.predicate && add.args == del.args)
                throw SemanticError("action '" + a.name + "': literal '" +
                                    add.predicate +
                                    "' appears in both add and delete effects");
    return a;
}

const std::set<std::string> kKnownRequirements = {
    ":strips", ":typing", ":negative-preconditions", ":equality"};

}  // namespace

Domain parse_domain(std::string_view text) {
    Parser p(text);
    Domain d;

    p.expect(Tok::LParen);
    p.expect_keyword("define");
    p.expect(Tok::LParen);
    p.expect_keyword("domain");
    d.name = p.expect_symbol("domain name");
    p.expect(Tok::RParen);

    while (!p.at(Tok::RParen)) {
        p.expect(Tok::LParen);
        std::string section = p.expect_symbol("domain section keyword");
        if (section == ":requirements") {
            while (!p.at(Tok::RParen)) {
                std::string flag = p.expect_symbol("requirement flag");
                if (!kKnownRequirements.count(flag))
                    throw SemanticError("unsupported requirement flag '" + flag +
                                        "'");
            }
            p.expect(Tok::RParen);
        } else if (section == ":types") {
            auto pairs = parse_typed_list(p, "object");
            p.expect(Tok::RParen);
            for (const auto& pr : pairs) {
                if (d.types.count(pr.name))
                    throw SemanticError("type '" + pr.name + "' declared twice");
                d.types[pr.name] = pr.type;
            }
            for (const auto& [child, parent] : d.types) {
                if (parent != "object" && !d.types.count(parent))
                    throw SemanticError("type '" + child +
                                        "' has undeclared parent '" + parent +
                                        "'");
            }
            // Cycle check: walk each chain to the root.
            for (const auto& [child, parent] : d.types) {
                std::set<std::string> seen{child};
                std::string cur = parent;
                while (cur != "object") {
                    if (!seen.insert(cur).second)
                        throw SemanticError("type cycle involving '" + child +
                                            "'");
                    cur = d.types.at(cur);
                }
            }
        } else if (section == ":predicates") {
            while (!p.at(Tok::RParen)) {
                p.expect(Tok::LParen);
                PredicateSchema ps;
                ps.name = p.expect_symbol("predicate name");
                auto raw = parse_typed_list(p, "object");
                p.expect(Tok::RParen);
                std::set<std::string> seen;
                for (auto& prm : raw) {
                    if (!is_variable(prm.name))
                        throw SemanticError("predicate '" + ps.name +
                                            "': parameter '" + prm.name +
                                            "' must start with '?'");
                    std::string n = var_name(prm.name);
                    if (!seen.insert(n).second)
                        throw SemanticError("predicate '" + ps.name +
                                            "': duplicate parameter '?" + n + "'");
                    ps.params.push_back({n, prm.type});
                }
                if (d.find_predicate(ps.name))
                    throw SemanticError("predicate '" + ps.name +
                                        "' declared twice");
                d.predicates.push_back(std::move(ps));
            }
            p.expect(Tok::RParen);
        } else if (section == ":action") {
            ActionSchema a = parse_action(p, d);
            if (d.find_action(a.name))
                throw SemanticError("action '" + a.name + "' declared twice");
            d.actions.push_back(std::move(a));
        } else {
            throw ParseError("unknown domain section '" + section + "'",
                             p.peek().line, p.peek().col);
        }
    }
    p.expect(Tok::RParen);
    p.expect_end();

    // Predicate param types must be declared too.
    for (const auto& ps : d.predicates)
        for (const auto& prm : ps.params)
            if (!d.type_declared(prm.type))
                throw SemanticError("predicate '" + ps.name +
                                    "': undeclared type '" + prm.type + "'");
    return d;
}

namespace {

void check_ground_atom(const Domain& d, const Problem& pr, const Atom& atom,
                       const char* where) {
    const PredicateSchema* ps = d.find_predicate(atom.predicate);
    if (!ps)
        throw SemanticError(std::string(where) + ": undeclared predicate '" +
                            atom.predicate + "'");
    if (ps->arity() != atom.args.size())
        throw SemanticError(std::string(where) + ": predicate '" +
                            atom.predicate + "' expects " +
                            std::to_string(ps->arity()) + " arguments, got " +
                            std::to_string(atom.args.size()));
    for (size_t i = 0; i < atom.args.size(); ++i) {
        const TypedObject* obj = pr.find_object(atom.args[i]);
        if (!obj)
            throw SemanticError(std::string(where) + ": undeclared object '" +
                                atom.args[i] + "'");
        if (!d.is_subtype(obj->type, ps->params[i].type))
            throw SemanticError(std::string(where) + ": object '" + obj->name +
                                "' of type '" + obj->type +
                                "' is not compatible with parameter type '" +
                                ps->params[i].type + "' of predicate '" +
                                atom.predicate + "'");
    }
}

}  // namespace

Problem parse_problem(std::string_view text, const Domain& domain) {
    Parser p(text);
    Problem pr;

    p.expect(Tok::LParen);
    p.expect_keyword("define");
    p.expect(Tok::LParen);
    p.expect_keyword("problem");
    pr.name = p.expect_symbol("problem name");
    p.expect(Tok::RParen);

    while (!p.at(Tok::RParen)) {
        p.expect(Tok::LParen);
        std::string section = p.expect_symbol("problem section keyword");
        if (section == ":domain") {
            pr.domain_name = p.expect_symbol("domain name");
            p.expect(Tok::RParen);
            if (pr.domain_name != domain.name)
                throw SemanticError("problem is for domain '" + pr.domain_name +
                                    "', expected '" + domain.name + "'");
        } else if (section == ":objects") {
            auto raw = parse_typed_list(p, "object");
            p.expect(Tok::RParen);
            for (const auto& o : raw) {
                if (is_variable(o.name))
                    throw SemanticError("object '" + o.name +
                                        "' must not start with '?'");
                if (!domain.type_declared(o.type))
                    throw SemanticError("object '" + o.name +
                                        "': undeclared type '" + o.type + "'");
                if (pr.find_object(o.name))
                    throw SemanticError("object '" + o.name +
                                        "' declared twice");
                pr.objects.push_back({o.name, o.type});
            }
        } else if (section == ":init") {
            while (!p.at(Tok::RParen)) {
                p.expect(Tok::LParen);
                Atom atom;
                atom.predicate = p.expect_symbol("predicate name");
                while (!p.at(Tok::RParen))
                    atom.args.push_back(p.expect_symbol("argument"));
                p.expect(Tok::RParen);
                if (std::find(pr.init.begin(), pr.init.end(), atom) ==
                    pr.init.end())
                    pr.init.push_back(std::move(atom));
            }
            p.expect(Tok::RParen);
        } else if (section == ":goal") {
            auto lits = parse_condition(p);
            p.expect(Tok::RParen);
            for (auto& lit : lits) {
                GroundLiteral gl;
                gl.negated = lit.negated;
                gl.atom.predicate = lit.predicate;
                gl.atom.args = lit.args;
                pr.goal.push_back(std::move(gl));
            }
        } else {
            throw ParseError("unknown problem section '" + section + "'",
                             p.peek().line, p.peek().col);
        }
    }
    p.expect(Tok::RParen);
    p.expect_end();

    for (const auto& atom : pr.init) check_ground_atom(domain, pr, atom, ":init");
    for (const auto& gl : pr.goal) {
        if (gl.atom.predicate == "=")
            throw SemanticError(":goal: '=' is not allowed in goals");
        check_ground_atom(domain, pr, gl.atom, ":goal");
    }
    return pr;
}

namespace {

// Finds balanced s-expressions in free-form text, left to right. Returns the
// substring spans; nesting starts a new candidate only at depth 0.
std::vector<std::string> balanced_sexprs(std::string_view text) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '(') {
            ++i;
            continue;
        }
        size_t start = i;
        int depth = 0;
        bool in_string = false;
        size_t j = i;
        for (; j < text.size(); ++j) {
            char c = text[j];
            if (in_string) {
                if (c == '"') in_string = false;
                continue;
            }
            if (c == '"') in_string = true;
            else if (c == '(') ++depth;
            else if (c == ')') {
                --depth;
                if (depth == 0) break;
            }
        }
        if (depth != 0) break;  // unbalanced tail, no more candidates
        out.emplace_back(text.substr(start, j - start + 1));
        i = j + 1;
    }
    return out;
}

std::string sexpr_head(std::string_view expr) {
    size_t i = 1;  // past '('
    while (i < expr.size() &&
           std::isspace(static_cast<unsigned char>(expr[i])))
        ++i;
    size_t start = i;
    while (i < expr.size() && expr[i] != '(' && expr[i] != ')' &&
           !std::isspace(static_cast<unsigned char>(expr[i])))
        ++i;
    return util::to_lower(std::string_view(expr).substr(start, i - start));
}

}  // namespace

Goal parse_goal(std::string_view text, const Domain& domain,
                const std::vector<TypedObject>& objects,
                GoalParseOptions opts) {
    auto exprs = balanced_sexprs(text);
    if (exprs.empty())
        throw GoalParseError("no goal expression found in response");

    const std::string* chosen = nullptr;
    for (const auto& e : exprs) {
        if (sexpr_head(e) == "and") {
            chosen = &e;
            break;
        }
    }
    if (!chosen) {
        for (const auto& e : exprs) {
            std::string head = sexpr_head(e);
            if (head == "not" || domain.find_predicate(head)) {
                chosen = &e;
                break;
            }
        }
    }
    if (!chosen)
        throw GoalParseError("unknown predicate '" + sexpr_head(exprs[0]) +
                             "' in goal expression");

    std::vector<Literal> lits;
    try {
        Parser p(*chosen);
        lits = parse_condition(p);
        p.expect_end();
    } catch (const ParseError& e) {
        throw GoalParseError(std::string("malformed goal expression: ") +
                             e.message());
    }

    Goal goal;
    for (auto& lit : lits) {
        if (lit.predicate == "=")
            throw GoalParseError("'=' is not allowed in goals");
        const PredicateSchema* ps = domain.find_predicate(lit.predicate);
        if (!ps)
            throw GoalParseError("unknown predicate '" + lit.predicate + "'");
        if (ps->arity() != lit.args.size())
            throw GoalParseError("predicate '" + lit.predicate + "' expects " +
                                 std::to_string(ps->arity()) +
                                 " arguments, got " +
                                 std::to_string(lit.args.size()));
        for (const auto& arg : lit.args) {
            if (is_variable(arg))
                throw GoalParseError("goal must be ground; found variable '" +
                                     arg + "'");
        }
        if (opts.check_objects) {
            for (size_t i = 0; i < lit.args.size(); ++i) {
                const TypedObject* obj = nullptr;
                for (const auto& o : objects)
                    if (o.name == lit.args[i]) obj = &o;
                if (!obj)
                    throw GoalParseError("unknown object '" + lit.args[i] + "'");
                if (!domain.is_subtype(obj->type, ps->params[i].type))
                    throw GoalParseError(
                        "object '" + obj->name + "' of type '" + obj->type +
                        "' is not compatible with parameter type '" +
                        ps->params[i].type + "' of predicate '" +
                        lit.predicate + "'");
            }
        }
        GroundLiteral gl;
        gl.negated = lit.negated;
        gl.atom.predicate = lit.predicate;
        gl.atom.args = lit.args;
        goal.push_back(std::move(gl));
    }
    return goal;
}

}  // namespace sclplan::pddl
