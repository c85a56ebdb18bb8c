#include "relviews/parse.hpp"

#include <atomic>
#include <cctype>

namespace relviews {

std::set<std::string> location_bases(const std::vector<std::string>& table) {
    std::set<std::string> out;
    for (const auto& n : table) {
        const auto b = n.find('[');
        out.insert(b == std::string::npos ? n : n.substr(0, b));
    }
    return out;
}

namespace {

enum class Tok { Int, Ident, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Value value = 0;
    std::size_t col = 0;
};

const char* const kSymbols[] = {"|-/->", "|->", "|=>", "\\/", "==", "!=", "<=", ">=", "&&", "||", "(", ")", "[",
                                "]",     ",",   ".",   "+",  "-",  "*",  "~",  "!",  "<",  ">",  "=",  "&"};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.col = i + 1;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Tok::Int;
            t.text = s.substr(i, j - i);
            t.value = static_cast<Value>(std::stol(t.text));
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
            t.kind = Tok::Ident;
            t.text = s.substr(i, j - i);
            i = j;
        } else {
            bool found = false;
            for (const char* sym : kSymbols) {
                const std::string sv(sym);
                if (s.compare(i, sv.size(), sv) == 0) {
                    t.kind = Tok::Sym;
                    t.text = sv;
                    i += sv.size();
                    found = true;
                    break;
                }
            }
            if (!found) throw Error(ErrorKind::SchemaError, "unexpected character '" + std::string(1, c) + "' at column " +
                                                                std::to_string(i + 1) + " in \"" + s + "\"");
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.col = s.size() + 1;
    out.push_back(end);
    return out;
}

struct Backtrack {};

class Parser {
public:
    Parser(const std::string& text, const ParseScope& scope, bool reads)
        : text_(text), toks_(tokenize(text)), scope_(scope), reads_(reads) {}

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool at(const char* sym) const { return peek().kind == Tok::Sym && peek().text == sym; }
    bool at_ident(const char* word) const { return peek().kind == Tok::Ident && peek().text == word; }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::SchemaError, "expected " + what + " at column " + std::to_string(peek().col) + " in \"" +
                                                text_ + "\"");
    }

    void expect(const char* sym) {
        if (!at(sym)) fail(std::string("'") + sym + "'");
        ++pos_;
    }

    std::string ident() {
        if (peek().kind != Tok::Ident) fail("a name");
        return toks_[pos_++].text;
    }

    void finish() {
        if (peek().kind != Tok::End) fail("end of input");
    }

    // ---- expressions ----

    Expr expr() { return or_expr(); }

    Expr or_expr() {
        Expr e = and_expr();
        while (at("||")) {
            ++pos_;
            e = Expr::binary(ExprKind::Or, e, and_expr());
        }
        return e;
    }

    Expr and_expr() {
        Expr e = cmp_expr();
        while (at("&&")) {
            ++pos_;
            e = Expr::binary(ExprKind::And, e, cmp_expr());
        }
        return e;
    }

    Expr cmp_expr() {
        Expr e = add_expr();
        if (peek().kind != Tok::Sym) return e;
        const std::string op = peek().text;
        if (op == "==" || op == "=") {
            ++pos_;
            return Expr::binary(ExprKind::Eq, e, add_expr());
        }
        if (op == "!=") {
            ++pos_;
            return Expr::binary(ExprKind::Ne, e, add_expr());
        }
        if (op == "<") {
            ++pos_;
            return Expr::binary(ExprKind::Lt, e, add_expr());
        }
        if (op == "<=") {
            ++pos_;
            return Expr::binary(ExprKind::Le, e, add_expr());
        }
        if (op == ">") {
            ++pos_;
            return Expr::binary(ExprKind::Lt, add_expr(), e);
        }
        if (op == ">=") {
            ++pos_;
            return Expr::binary(ExprKind::Le, add_expr(), e);
        }
        return e;
    }

    Expr add_expr() {
        Expr e = unary_expr();
        while (at("+") || at("-")) {
            const bool plus = at("+");
            ++pos_;
            e = Expr::binary(plus ? ExprKind::Plus : ExprKind::Minus, e, unary_expr());
        }
        return e;
    }

    Expr unary_expr() {
        if (at("!")) {
            ++pos_;
            return Expr::negate(unary_expr());
        }
        if (at("-") && peek(1).kind == Tok::Int) {
            ++pos_;
            return Expr::constant(-toks_[pos_++].value);
        }
        return primary();
    }

    Expr primary() {
        const Token& t = peek();
        if (t.kind == Tok::Int) {
            ++pos_;
            return Expr::constant(t.value);
        }
        if (at("(")) {
            ++pos_;
            Expr e = expr();
            expect(")");
            return e;
        }
        if (t.kind != Tok::Ident) fail("an expression");
        const std::string name = ident();
        if (name == "mytid") {
            expect("(");
            expect(")");
            return Expr::self();
        }
        if (name == "_") {
            if (reads_) fail("an expression (wildcards are for assertions)");
            std::string w = "_" + std::to_string(wildcard_counter_++);
            wildcards_.push_back(w);
            return Expr::lvar(w);
        }
        if (at("[")) {
            if (!reads_) fail("a logical expression (no heap reads in assertions)");
            if (!scope_.locations.count(name)) fail("a declared location instead of " + name);
            ++pos_;
            LocRef l;
            l.base = name;
            l.index = std::make_shared<const Expr>(expr());
            expect("]");
            return Expr::read(std::move(l));
        }
        if (auto it = scope_.constants.find(name); it != scope_.constants.end()) return Expr::constant(it->second);
        if (reads_ && scope_.locations.count(name)) {
            LocRef l;
            l.base = name;
            return Expr::read(std::move(l));
        }
        return Expr::lvar(name);
    }

    LocRef loc() {
        if (at("&")) ++pos_;
        LocRef l;
        l.base = ident();
        if (at("[")) {
            ++pos_;
            l.index = std::make_shared<const Expr>(expr());
            expect("]");
        }
        return l;
    }

    // ---- assertions ----

    Spatial spatial() { return disj(); }

    Spatial disj() {
        Spatial s = star();
        while (at("\\/")) {
            ++pos_;
            s = sp::disj(s, star());
        }
        return s;
    }

    Spatial star() {
        Spatial s = sunary();
        while (at("*")) {
            ++pos_;
            s = sp::star(s, sunary());
        }
        return s;
    }

    Spatial sunary() {
        if (at("~")) {
            ++pos_;
            return sp::negate(sunary());
        }
        return satom();
    }

    static bool continues_expr(const Token& t) {
        if (t.kind != Tok::Sym) return false;
        static const std::set<std::string> ops{"==", "=", "!=", "<", "<=", ">", ">=", "+", "-", "&&", "||"};
        return ops.count(t.text) != 0;
    }

    Spatial wrap_wildcards(Spatial s, std::size_t mark) {
        while (wildcards_.size() > mark) {
            s = sp::exists(wildcards_.back(), s);
            wildcards_.pop_back();
        }
        return s;
    }

    Spatial binder(bool big) {
        std::vector<std::string> vars;
        while (peek().kind == Tok::Ident) vars.push_back(ident());
        if (vars.empty()) fail("a bound variable");
        expect(".");
        Spatial body = spatial();
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = big ? sp::bigstar(*it, body) : sp::exists(*it, body);
        return body;
    }

    Spatial satom() {
        const std::size_t mark = wildcards_.size();
        const Token& t = peek();
        if (t.kind == Tok::Ident) {
            const std::string w = t.text;
            if (w == "emp" || w == "true" || w == "false") {
                if (!continues_expr(peek(1))) {
                    ++pos_;
                    return w == "emp" ? sp::emp() : w == "true" ? sp::truth() : sp::falsity();
                }
            }
            if (w == "box" && peek(1).kind == Tok::Sym && peek(1).text == "(") {
                pos_ += 2;
                Spatial s = spatial();
                expect(")");
                return sp::box(s);
            }
            if (w == "exists" || w == "bigstar") {
                ++pos_;
                return binder(w == "bigstar");
            }
            if ((w == "todo" || w == "done") && peek(1).kind == Tok::Sym && peek(1).text == "(") {
                pos_ += 2;
                Expr thread = expr();
                expect(",");
                const std::string method = ident();
                if (!scope_.methods.empty() && !scope_.methods.count(method)) fail("a declared method");
                expect(",");
                Expr a = expr();
                expect(",");
                Expr r = expr();
                expect(")");
                return wrap_wildcards(sp::token(w == "todo" ? TokenKind::Todo : TokenKind::Done, thread, method, a, r),
                                      mark);
            }
            if (scope_.macros.count(w) && peek(1).kind == Tok::Sym && peek(1).text == "(") {
                pos_ += 2;
                std::vector<Expr> args;
                if (!at(")")) {
                    args.push_back(expr());
                    while (at(",")) {
                        ++pos_;
                        args.push_back(expr());
                    }
                }
                expect(")");
                return wrap_wildcards(sp::macro(w, std::move(args)), mark);
            }
        }
        if (t.kind == Tok::Ident || at("&")) {
            const std::size_t save = pos_;
            try {
                LocRef l = loc();
                if (at("|->") || at("|=>") || at("|-/->")) {
                    const std::string arrow = toks_[pos_++].text;
                    Expr v = expr();
                    Spatial s;
                    if (arrow == "|->") {
                        s = sp::points_to(l, v);
                    } else if (arrow == "|=>") {
                        s = sp::apoints_to(l, v);
                    } else {
                        const std::string y = "_ne" + std::to_string(wildcard_counter_++);
                        s = sp::exists(y, sp::star(sp::points_to(l, Expr::lvar(y)),
                                                   sp::pure(Expr::binary(ExprKind::Ne, Expr::lvar(y), v))));
                    }
                    return wrap_wildcards(s, mark);
                }
            } catch (const Error&) {
            }
            pos_ = save;
            wildcards_.resize(mark);
        }
        if (at("(")) {
            const std::size_t save = pos_;
            try {
                ++pos_;
                Spatial s = spatial();
                expect(")");
                if (!continues_expr(peek())) return s;
            } catch (const Error&) {
            }
            pos_ = save;
            wildcards_.resize(mark);
        }
        return wrap_wildcards(sp::pure(expr()), mark);
    }

private:
    std::string text_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const ParseScope& scope_;
    bool reads_;
    std::vector<std::string> wildcards_;
    int wildcard_counter_ = 0;
};

} // namespace

Expr parse_expr(const std::string& text, const ParseScope& scope) {
    Parser p(text, scope, true);
    Expr e = p.expr();
    p.finish();
    return e;
}

LocRef parse_loc(const std::string& text, const ParseScope& scope) {
    Parser p(text, scope, true);
    LocRef l = p.loc();
    p.finish();
    return l;
}

Spatial parse_spatial(const std::string& text, const ParseScope& scope) {
    Parser p(text, scope, false);
    Spatial s = p.spatial();
    p.finish();
    return s;
}

} // namespace relviews
