#include <cctype>

#include "kedge/errors.hpp"
#include "kedge/policy.hpp"

namespace kedge {

namespace {

enum class Tok {
    Ident,
    String,
    Integer,
    Decimal,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Dot,
    ColonColon,
    At,
    EqEq,
    NotEq,
    Le,
    Ge,
    Lt,
    Gt,
    AndAnd,
    OrOr,
    Bang,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_ws();
            Token t = next();
            out.push_back(t);
            if (t.kind == Tok::End) break;
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        raise(Errc::SyntaxError,
              what + " at " + std::to_string(line_) + ":" + std::to_string(col_));
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    char peek2() const { return pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0'; }

    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek2() == '/') {
                while (pos_ < src_.size() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token next() {
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = advance();
        switch (c) {
        case '(': t.kind = Tok::LParen; return t;
        case ')': t.kind = Tok::RParen; return t;
        case '{': t.kind = Tok::LBrace; return t;
        case '}': t.kind = Tok::RBrace; return t;
        case '[': t.kind = Tok::LBracket; return t;
        case ']': t.kind = Tok::RBracket; return t;
        case ',': t.kind = Tok::Comma; return t;
        case ';': t.kind = Tok::Semi; return t;
        case '.': t.kind = Tok::Dot; return t;
        case '@': t.kind = Tok::At; return t;
        case ':':
            if (peek() == ':') {
                advance();
                t.kind = Tok::ColonColon;
                return t;
            }
            fail("stray ':'");
        case '=':
            if (peek() == '=') {
                advance();
                t.kind = Tok::EqEq;
                return t;
            }
            fail("stray '=' (did you mean '==')");
        case '!':
            if (peek() == '=') {
                advance();
                t.kind = Tok::NotEq;
                return t;
            }
            t.kind = Tok::Bang;
            return t;
        case '<':
            if (peek() == '=') {
                advance();
                t.kind = Tok::Le;
                return t;
            }
            t.kind = Tok::Lt;
            return t;
        case '>':
            if (peek() == '=') {
                advance();
                t.kind = Tok::Ge;
                return t;
            }
            t.kind = Tok::Gt;
            return t;
        case '&':
            if (peek() == '&') {
                advance();
                t.kind = Tok::AndAnd;
                return t;
            }
            fail("stray '&' (did you mean '&&')");
        case '|':
            if (peek() == '|') {
                advance();
                t.kind = Tok::OrOr;
                return t;
            }
            fail("stray '|' (did you mean '||')");
        case '"': {
            t.kind = Tok::String;
            while (pos_ < src_.size() && peek() != '"') {
                if (peek() == '\n') fail("unterminated string");
                t.text += advance();
            }
            if (pos_ >= src_.size()) fail("unterminated string");
            advance(); // closing quote
            return t;
        }
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.text += c;
            while (std::isdigit(static_cast<unsigned char>(peek()))) t.text += advance();
            if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek2()))) {
                t.text += advance();
                while (std::isdigit(static_cast<unsigned char>(peek()))) t.text += advance();
                t.kind = Tok::Decimal;
            } else {
                t.kind = Tok::Integer;
            }
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Tok::Ident;
            t.text += c;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                t.text += advance();
            return t;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// Literal kind tags used for parse-time compatibility checks.
enum class OperandKind { Attr, Int, Decimal, Str, Bool };

OperandKind operand_kind(const Operand& op) {
    switch (op.index()) {
    case 0: return OperandKind::Attr;
    case 1: return OperandKind::Int;
    case 2: return OperandKind::Decimal;
    case 3: return OperandKind::Str;
    default: return OperandKind::Bool;
    }
}

bool is_ordered(CmpOp op) {
    return op == CmpOp::Lt || op == CmpOp::Le || op == CmpOp::Gt || op == CmpOp::Ge;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    std::vector<PolicyRule> run() {
        std::vector<PolicyRule> rules;
        while (!at(Tok::End)) rules.push_back(rule(static_cast<int>(rules.size()) + 1));
        return rules;
    }

private:
    const Token& cur() const { return tokens_[pos_]; }
    bool at(Tok k) const { return cur().kind == k; }

    [[noreturn]] void fail(const std::string& what) const {
        raise(Errc::SyntaxError,
              what + " at " + std::to_string(cur().line) + ":" + std::to_string(cur().col));
    }

    [[noreturn]] void type_fail(const std::string& what) const {
        raise(Errc::TypeError,
              what + " at " + std::to_string(cur().line) + ":" + std::to_string(cur().col));
    }

    Token eat(Tok k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what);
        return tokens_[pos_++];
    }

    bool eat_if(Tok k) {
        if (at(k)) {
            ++pos_;
            return true;
        }
        return false;
    }

    Token eat_keyword(const char* word) {
        if (!at(Tok::Ident) || cur().text != word) fail(std::string("expected '") + word + "'");
        return tokens_[pos_++];
    }

    PolicyRule rule(int ordinal) {
        PolicyRule r;
        r.rule_id = "rule-" + std::to_string(ordinal);
        if (eat_if(Tok::At)) {
            eat_keyword("note");
            eat(Tok::LParen, "'('");
            r.note = eat(Tok::String, "string").text;
            eat(Tok::RParen, "')'");
        }
        Token effect = eat(Tok::Ident, "rule effect");
        if (effect.text == "permit") r.effect = Effect::Permit;
        else if (effect.text == "forbid") r.effect = Effect::Forbid;
        else if (effect.text == "escalate") r.effect = Effect::Escalate;
        else fail("expected 'permit', 'forbid', or 'escalate'");

        eat(Tok::LParen, "'('");
        r.principal = principal_clause();
        eat(Tok::Comma, "','");
        r.action = action_clause();
        eat(Tok::Comma, "','");
        r.resource = resource_clause();
        eat(Tok::RParen, "')'");

        if (at(Tok::Ident) && cur().text == "when") {
            ++pos_;
            eat(Tok::LBrace, "'{'");
            r.condition = expr();
            eat(Tok::RBrace, "'}'");
        }
        eat(Tok::Semi, "';'");
        return r;
    }

    std::string role_ref() {
        eat_keyword("Role");
        eat(Tok::ColonColon, "'::'");
        return eat(Tok::String, "role string").text;
    }

    PrincipalConstraint principal_clause() {
        eat_keyword("principal");
        PrincipalConstraint c;
        if (eat_if(Tok::EqEq)) {
            c.kind = PrincipalConstraint::Kind::ExactActor;
            c.actor_id = eat(Tok::String, "actor id string").text;
        } else if (at(Tok::Ident) && cur().text == "in") {
            ++pos_;
            c.kind = PrincipalConstraint::Kind::RoleIn;
            if (eat_if(Tok::LBracket)) {
                c.roles.push_back(role_ref());
                while (eat_if(Tok::Comma)) c.roles.push_back(role_ref());
                eat(Tok::RBracket, "']'");
            } else {
                c.roles.push_back(role_ref());
            }
        }
        return c;
    }

    std::string action_ref() {
        eat_keyword("Action");
        eat(Tok::ColonColon, "'::'");
        return eat(Tok::String, "action string").text;
    }

    ActionConstraint action_clause() {
        eat_keyword("action");
        ActionConstraint c;
        if (eat_if(Tok::EqEq)) {
            c.kind = ActionConstraint::Kind::OneOf;
            c.actions.push_back(action_ref());
        } else if (at(Tok::Ident) && cur().text == "in") {
            ++pos_;
            c.kind = ActionConstraint::Kind::OneOf;
            eat(Tok::LBracket, "'['");
            c.actions.push_back(action_ref());
            while (eat_if(Tok::Comma)) c.actions.push_back(action_ref());
            eat(Tok::RBracket, "']'");
        }
        return c;
    }

    ResourceConstraint resource_clause() {
        eat_keyword("resource");
        ResourceConstraint c;
        if (eat_if(Tok::EqEq)) {
            c.kind = ResourceConstraint::Kind::ExactId;
            c.value = eat(Tok::String, "entity id string").text;
        } else if (at(Tok::Ident) && cur().text == "is") {
            ++pos_;
            c.kind = ResourceConstraint::Kind::KindIs;
            c.value = eat(Tok::String, "entity kind string").text;
        }
        return c;
    }

    Expr expr() { return or_expr(); }

    Expr or_expr() {
        Expr left = and_expr();
        while (at(Tok::OrOr)) {
            ++pos_;
            Expr node;
            node.kind = Expr::Kind::Or;
            node.children.push_back(std::move(left));
            node.children.push_back(and_expr());
            left = std::move(node);
        }
        return left;
    }

    Expr and_expr() {
        Expr left = unary();
        while (at(Tok::AndAnd)) {
            ++pos_;
            Expr node;
            node.kind = Expr::Kind::And;
            node.children.push_back(std::move(left));
            node.children.push_back(unary());
            left = std::move(node);
        }
        return left;
    }

    Expr unary() {
        if (eat_if(Tok::Bang)) {
            Expr node;
            node.kind = Expr::Kind::Not;
            node.children.push_back(unary());
            return node;
        }
        if (at(Tok::LParen)) {
            ++pos_;
            Expr inner = expr();
            eat(Tok::RParen, "')'");
            return inner;
        }
        return comparison();
    }

    Expr comparison() {
        Operand left = operand();
        CmpOp op;
        switch (cur().kind) {
        case Tok::Lt: op = CmpOp::Lt; break;
        case Tok::Le: op = CmpOp::Le; break;
        case Tok::Gt: op = CmpOp::Gt; break;
        case Tok::Ge: op = CmpOp::Ge; break;
        case Tok::EqEq: op = CmpOp::Eq; break;
        case Tok::NotEq: op = CmpOp::Ne; break;
        default: {
            // bare operand: must be boolean-valued
            const OperandKind k = operand_kind(left);
            if (k != OperandKind::Attr && k != OperandKind::Bool)
                type_fail("bare condition term must be boolean");
            Expr node;
            node.kind = Expr::Kind::BoolOperand;
            node.lhs = std::move(left);
            return node;
        }
        }
        ++pos_;
        Operand right = operand();
        check_compat(left, right, op);
        Expr node;
        node.kind = Expr::Kind::Compare;
        node.lhs = std::move(left);
        node.rhs = std::move(right);
        node.op = op;
        return node;
    }

    void check_compat(const Operand& left, const Operand& right, CmpOp op) {
        const OperandKind lk = operand_kind(left);
        const OperandKind rk = operand_kind(right);
        if (lk == OperandKind::Attr || rk == OperandKind::Attr) return; // checked at evaluation
        if (lk != rk) type_fail("comparison between incompatible literal kinds");
        if (is_ordered(op) && (lk == OperandKind::Str || lk == OperandKind::Bool))
            type_fail("ordered comparison on non-numeric literals");
    }

    Operand operand() {
        if (at(Tok::Ident) && cur().text == "context") {
            ++pos_;
            eat(Tok::Dot, "'.'");
            return AttrRef{eat(Tok::Ident, "attribute name").text};
        }
        if (at(Tok::Ident) && (cur().text == "true" || cur().text == "false")) {
            const bool v = cur().text == "true";
            ++pos_;
            return v;
        }
        if (at(Tok::Integer)) {
            std::int64_t v = std::stoll(cur().text);
            ++pos_;
            return v;
        }
        if (at(Tok::Decimal)) {
            Fixed4 v = Fixed4::parse(cur().text); // rejects >4 fractional digits
            if (v < Fixed4::from_raw(0) || v > Fixed4::from_raw(Fixed4::kScale))
                fail("decimal literal outside [0, 1]");
            ++pos_;
            return v;
        }
        if (at(Tok::String)) {
            std::string v = cur().text;
            ++pos_;
            return v;
        }
        fail("expected context attribute or literal");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

void render_operand(std::string& out, const Operand& op) {
    switch (op.index()) {
    case 0: out += "context." + std::get<AttrRef>(op).name; break;
    case 1: out += std::to_string(std::get<std::int64_t>(op)); break;
    case 2: out += std::get<Fixed4>(op).str(); break;
    case 3: out += '"' + std::get<std::string>(op) + '"'; break;
    default: out += std::get<bool>(op) ? "true" : "false";
    }
}

const char* cmp_text(CmpOp op) {
    switch (op) {
    case CmpOp::Lt: return " < ";
    case CmpOp::Le: return " <= ";
    case CmpOp::Gt: return " > ";
    case CmpOp::Ge: return " >= ";
    case CmpOp::Eq: return " == ";
    case CmpOp::Ne: return " != ";
    }
    return " == ";
}

void render_expr(std::string& out, const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::And:
    case Expr::Kind::Or:
        out += '(';
        render_expr(out, e.children[0]);
        out += e.kind == Expr::Kind::And ? " && " : " || ";
        render_expr(out, e.children[1]);
        out += ')';
        break;
    case Expr::Kind::Not:
        out += "!(";
        render_expr(out, e.children[0]);
        out += ')';
        break;
    case Expr::Kind::Compare:
        render_operand(out, e.lhs);
        out += cmp_text(e.op);
        render_operand(out, e.rhs);
        break;
    case Expr::Kind::BoolOperand:
        render_operand(out, e.lhs);
        break;
    }
}

} // namespace

PolicySet parse_policies(std::string_view source) {
    PolicySet set;
    set.source_digest = sha256(source);
    set.rules = Parser(Lexer(source).run()).run();
    return set;
}

std::string serialize(const PolicySet& policies) {
    std::string out;
    for (const PolicyRule& r : policies.rules) {
        if (!r.note.empty()) out += "@note(\"" + r.note + "\")\n";
        out += effect_name(r.effect);
        out += " (\n    principal";
        switch (r.principal.kind) {
        case PrincipalConstraint::Kind::Any: break;
        case PrincipalConstraint::Kind::ExactActor:
            out += " == \"" + r.principal.actor_id + '"';
            break;
        case PrincipalConstraint::Kind::RoleIn:
            out += " in ";
            if (r.principal.roles.size() == 1) {
                out += "Role::\"" + r.principal.roles[0] + '"';
            } else {
                out += '[';
                for (std::size_t i = 0; i < r.principal.roles.size(); ++i) {
                    if (i) out += ", ";
                    out += "Role::\"" + r.principal.roles[i] + '"';
                }
                out += ']';
            }
            break;
        }
        out += ",\n    action";
        if (r.action.kind == ActionConstraint::Kind::OneOf) {
            if (r.action.actions.size() == 1) {
                out += " == Action::\"" + r.action.actions[0] + '"';
            } else {
                out += " in [";
                for (std::size_t i = 0; i < r.action.actions.size(); ++i) {
                    if (i) out += ", ";
                    out += "Action::\"" + r.action.actions[i] + '"';
                }
                out += ']';
            }
        }
        out += ",\n    resource";
        switch (r.resource.kind) {
        case ResourceConstraint::Kind::Any: break;
        case ResourceConstraint::Kind::ExactId: out += " == \"" + r.resource.value + '"'; break;
        case ResourceConstraint::Kind::KindIs: out += " is \"" + r.resource.value + '"'; break;
        }
        out += "\n)";
        if (r.condition) {
            out += " when {\n    ";
            render_expr(out, *r.condition);
            out += "\n}";
        }
        out += ";\n\n";
    }
    return out;
}

} // namespace kedge
