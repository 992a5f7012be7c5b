#include "swf/parser.hpp"

#include <cctype>
#include <charconv>
#include <unordered_set>

namespace swf {

namespace {

enum class Tok {
    End,
    Ident,
    Int,
    Real,
    String,
    DateLit,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Colon,
    Cmp,  // < <= > >= == !=
};

struct Token {
    Tok kind = Tok::End;
    std::string text;     // ident text, string content, cmp text
    std::int64_t ival = 0;
    double rval = 0;
    Date dval;
    SourcePos pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_space();
        tok_ = Token{};
        tok_.pos = pos();
        if (i_ >= text_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        char c = text_[i_];
        if (c == '"') {
            lex_string();
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && i_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[i_ + 1])))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) ||
                                         text_[i_] == '_'))
                bump();
            tok_.kind = Tok::Ident;
            tok_.text = text_.substr(start, i_ - start);
            return;
        }
        switch (c) {
            case '{': tok_.kind = Tok::LBrace; bump(); return;
            case '}': tok_.kind = Tok::RBrace; bump(); return;
            case '[': tok_.kind = Tok::LBracket; bump(); return;
            case ']': tok_.kind = Tok::RBracket; bump(); return;
            case '(': tok_.kind = Tok::LParen; bump(); return;
            case ')': tok_.kind = Tok::RParen; bump(); return;
            case ',': tok_.kind = Tok::Comma; bump(); return;
            case ':': tok_.kind = Tok::Colon; bump(); return;
            case '<':
            case '>': {
                tok_.kind = Tok::Cmp;
                tok_.text = c;
                bump();
                if (i_ < text_.size() && text_[i_] == '=') {
                    tok_.text += '=';
                    bump();
                }
                return;
            }
            case '=':
            case '!': {
                bump();
                if (i_ >= text_.size() || text_[i_] != '=')
                    throw ParseError(tok_.pos, std::string("unexpected '") + c + "'");
                bump();
                tok_.kind = Tok::Cmp;
                tok_.text = std::string(1, c) + "=";
                return;
            }
        }
        throw ParseError(tok_.pos, std::string("unexpected character '") + c + "'");
    }

    void skip_space() {
        for (;;) {
            while (i_ < text_.size() &&
                   std::isspace(static_cast<unsigned char>(text_[i_])))
                bump();
            if (i_ < text_.size() && text_[i_] == '#') {
                while (i_ < text_.size() && text_[i_] != '\n') bump();
                continue;
            }
            return;
        }
    }

    void lex_string() {
        bump();  // opening quote
        std::string out;
        while (i_ < text_.size() && text_[i_] != '"') {
            char c = text_[i_];
            if (c == '\\' && i_ + 1 < text_.size()) {
                bump();
                c = text_[i_];
            }
            if (c == '\n') throw ParseError(tok_.pos, "unterminated string literal");
            out += c;
            bump();
        }
        if (i_ >= text_.size()) throw ParseError(tok_.pos, "unterminated string literal");
        bump();  // closing quote
        tok_.kind = Tok::String;
        tok_.text = std::move(out);
    }

    bool iso_date_ahead() const {
        // \d{4}-\d{2}-\d{2} not followed by an identifier character
        if (i_ + 10 > text_.size()) return false;
        for (std::size_t k : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
            if (!std::isdigit(static_cast<unsigned char>(text_[i_ + k]))) return false;
        if (text_[i_ + 4] != '-' || text_[i_ + 7] != '-') return false;
        if (i_ + 10 < text_.size()) {
            char n = text_[i_ + 10];
            if (std::isalnum(static_cast<unsigned char>(n)) || n == '_' || n == '-')
                return false;
        }
        return true;
    }

    void lex_number() {
        if (iso_date_ahead()) {
            auto num = [&](std::size_t off, std::size_t n) {
                int v = 0;
                for (std::size_t k = 0; k < n; ++k) v = v * 10 + (text_[i_ + off + k] - '0');
                return v;
            };
            int y = num(0, 4), m = num(5, 2), d = num(8, 2);
            if (!Date::valid(y, m, d))
                throw ParseError(tok_.pos, "invalid calendar date");
            for (int k = 0; k < 10; ++k) bump();
            tok_.kind = Tok::DateLit;
            tok_.dval = Date{y, m, d};
            return;
        }
        std::size_t start = i_;
        if (text_[i_] == '-') bump();
        while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) bump();
        bool is_real = false;
        if (i_ + 1 < text_.size() && text_[i_] == '.' &&
            std::isdigit(static_cast<unsigned char>(text_[i_ + 1]))) {
            is_real = true;
            bump();
            while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_])))
                bump();
        }
        if (i_ < text_.size() && (text_[i_] == 'e' || text_[i_] == 'E')) {
            std::size_t save = i_;
            bump();
            if (i_ < text_.size() && (text_[i_] == '+' || text_[i_] == '-')) bump();
            if (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
                is_real = true;
                while (i_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[i_])))
                    bump();
            } else {
                i_ = save;  // 'e' starts an identifier, not an exponent
            }
        }
        const std::string lit = text_.substr(start, i_ - start);
        if (is_real) {
            tok_.kind = Tok::Real;
            auto [p, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), tok_.rval);
            if (ec != std::errc()) throw ParseError(tok_.pos, "invalid real literal");
        } else {
            tok_.kind = Tok::Int;
            auto [p, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), tok_.ival);
            if (ec != std::errc())
                throw ParseError(tok_.pos, "integer literal out of range");
        }
    }

    SourcePos pos() const { return {line_, col_}; }

    void bump() {
        if (text_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    const std::string& text_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lx_(text) {}

    Workflow parse_document() {
        Workflow w;
        w.input = parse_input_block();
        w.input.schema.check();
        while (lx_.peek().kind != Tok::End) w.steps.push_back(parse_step());
        check_steps(w.steps, w.input.schema, 0);
        return w;
    }

    ConstraintPtr parse_constraint_only() {
        ConstraintPtr e = parse_or();
        expect_end();
        return e;
    }

private:
    // ---- document structure ----

    InputDecl parse_input_block() {
        expect_keyword("input");
        InputDecl in;
        in.kind = parse_loader_kind();
        in.path = expect(Tok::String, "input file path").text;
        expect_keyword("key");
        in.schema.key_field = expect_ident("key field name");
        expect(Tok::LBrace, "'{'");
        for (;;) {
            std::string name = expect_ident("field name");
            expect(Tok::Colon, "':'");
            Token kt = lx_.take();
            if (kt.kind != Tok::Ident)
                throw ParseError(kt.pos, "expected field kind (int, real, text, date, bool)");
            auto kind = field_kind_from_string(kt.text);
            if (!kind)
                throw ParseError(kt.pos, "unknown field kind '" + kt.text + "'");
            in.schema.entries.push_back({name, *kind});
            if (lx_.peek().kind == Tok::Comma) {
                lx_.take();
                continue;
            }
            break;
        }
        expect(Tok::RBrace, "'}'");
        return in;
    }

    LoaderKind parse_loader_kind() {
        Token t = lx_.take();
        if (t.kind == Tok::Ident && t.text == "csv") return LoaderKind::Csv;
        if (t.kind == Tok::Ident && t.text == "json") return LoaderKind::Json;
        throw ParseError(t.pos, "expected loader kind (csv or json)");
    }

    Step parse_step() {
        Token t = lx_.peek();
        if (t.kind != Tok::Ident)
            throw ParseError(t.pos, "expected an operator keyword");
        Step s;
        s.pos = t.pos;
        if (t.text == "filter") {
            lx_.take();
            s.node = FilterStep{parse_or()};
        } else if (t.text == "random") {
            lx_.take();
            RandomStep r;
            r.n = expect_count("sample size");
            expect_keyword("seed");
            r.seed = expect_seed();
            s.node = r;
        } else if (t.text == "systematic") {
            lx_.take();
            SystematicStep sy;
            sy.n = expect_count("sample size");
            expect_keyword("order_by");
            sy.order_field = expect_ident("order field");
            Token dir = lx_.take();
            if (dir.kind != Tok::Ident || (dir.text != "asc" && dir.text != "desc"))
                throw ParseError(dir.pos, "expected 'asc' or 'desc'");
            sy.ascending = dir.text == "asc";
            expect_keyword("seed");
            sy.seed = expect_seed();
            s.node = sy;
        } else if (t.text == "manual") {
            lx_.take();
            s.node = ManualStep{parse_id_list()};
        } else if (t.text == "group") {
            lx_.take();
            s.node = parse_group();
        } else if (t.text == "stratified") {
            lx_.take();
            StratifiedStep st;
            st.strata = parse_strata_block();
            expect_keyword("take");
            st.take = expect_count("per-stratum sample size");
            expect_keyword("seed");
            st.seed = expect_seed();
            s.node = st;
        } else if (t.text == "cluster") {
            lx_.take();
            ClusterStep cl;
            cl.strata = parse_strata_block();
            expect_keyword("pick");
            cl.pick = expect_count("cluster count");
            expect_keyword("seed");
            cl.seed = expect_seed();
            s.node = cl;
        } else if (t.text == "quota") {
            lx_.take();
            s.node = parse_quota();
        } else if (t.text == "union") {
            lx_.take();
            s.node = UnionStep{};
        } else if (t.text == "intersection") {
            lx_.take();
            s.node = IntersectionStep{};
        } else if (t.text == "add_metadata") {
            lx_.take();
            AddMetadataStep am;
            am.kind = parse_loader_kind();
            am.path = expect(Tok::String, "metadata file path").text;
            expect_keyword("join");
            am.join_key = expect_ident("join key");
            s.node = am;
        } else {
            throw ParseError(t.pos, "unknown operator '" + t.text + "'");
        }
        return s;
    }

    GroupStep parse_group() {
        GroupStep g;
        expect(Tok::LBrace, "'{'");
        std::unordered_set<std::string> labels;
        while (peek_keyword("branch")) {
            lx_.take();
            Branch b;
            Token lt = lx_.peek();
            b.label = expect_ident("branch label");
            if (!labels.insert(b.label).second)
                throw ParseError(lt.pos, "duplicate branch label '" + b.label + "'");
            expect(Tok::LBrace, "'{'");
            while (lx_.peek().kind != Tok::RBrace) b.steps.push_back(parse_step());
            expect(Tok::RBrace, "'}'");
            g.branches.push_back(std::move(b));
        }
        Token t = lx_.peek();
        expect(Tok::RBrace, "'}'");
        if (g.branches.empty())
            throw ParseError(t.pos, "group requires at least one branch");
        return g;
    }

    std::vector<Stratum> parse_strata_block() {
        expect(Tok::LBrace, "'{'");
        std::vector<Stratum> strata;
        std::unordered_set<std::string> labels;
        while (peek_keyword("stratum")) {
            lx_.take();
            Stratum st;
            Token lt = lx_.peek();
            st.label = expect_ident("stratum label");
            if (!labels.insert(st.label).second)
                throw ParseError(lt.pos, "duplicate stratum label '" + st.label + "'");
            expect_keyword("where");
            st.where = parse_or();
            strata.push_back(std::move(st));
        }
        Token t = lx_.peek();
        expect(Tok::RBrace, "'}'");
        if (strata.empty()) throw ParseError(t.pos, "expected at least one stratum");
        return strata;
    }

    QuotaStep parse_quota() {
        QuotaStep q;
        expect(Tok::LBrace, "'{'");
        std::unordered_set<std::string> labels;
        while (peek_keyword("stratum")) {
            lx_.take();
            QuotaBranch b;
            Token lt = lx_.peek();
            b.stratum.label = expect_ident("stratum label");
            if (!labels.insert(b.stratum.label).second)
                throw ParseError(lt.pos, "duplicate stratum label '" + b.stratum.label + "'");
            expect_keyword("where");
            b.stratum.where = parse_or();
            expect_keyword("take");
            b.ids = parse_id_list();
            q.branches.push_back(std::move(b));
        }
        Token t = lx_.peek();
        expect(Tok::RBrace, "'}'");
        if (q.branches.empty()) throw ParseError(t.pos, "expected at least one stratum");
        return q;
    }

    std::vector<std::string> parse_id_list() {
        expect(Tok::LBracket, "'['");
        std::vector<std::string> ids;
        if (lx_.peek().kind != Tok::RBracket) {
            for (;;) {
                ids.push_back(expect(Tok::String, "artifact id string").text);
                if (lx_.peek().kind == Tok::Comma) {
                    lx_.take();
                    continue;
                }
                break;
            }
        }
        expect(Tok::RBracket, "']'");
        return ids;
    }

    // ---- constraints ----

    ConstraintPtr parse_or() {
        ConstraintPtr lhs = parse_and();
        while (peek_keyword("or")) {
            lx_.take();
            ConstraintPtr rhs = parse_and();
            lhs = make_expr({OrExpr{lhs, rhs}});
        }
        return lhs;
    }

    ConstraintPtr parse_and() {
        ConstraintPtr lhs = parse_not();
        while (peek_keyword("and")) {
            lx_.take();
            ConstraintPtr rhs = parse_not();
            lhs = make_expr({AndExpr{lhs, rhs}});
        }
        return lhs;
    }

    ConstraintPtr parse_not() {
        if (peek_keyword("not")) {
            lx_.take();
            return make_expr({NotExpr{parse_not()}});
        }
        return parse_cmp();
    }

    ConstraintPtr parse_cmp() {
        if (lx_.peek().kind == Tok::LParen) {
            lx_.take();
            ConstraintPtr inner = parse_or();
            expect(Tok::RParen, "')'");
            return inner;
        }
        Operand lhs = parse_operand();
        Token t = lx_.peek();
        if (t.kind == Tok::Ident && t.text == "in") {
            lx_.take();
            const auto* field = std::get_if<FieldRef>(&lhs);
            if (!field)
                throw ParseError(t.pos, "'in' requires a field on the left-hand side");
            Membership m;
            m.field = *field;
            expect(Tok::LBracket, "'['");
            for (;;) {
                m.items.push_back(parse_literal());
                if (lx_.peek().kind == Tok::Comma) {
                    lx_.take();
                    continue;
                }
                break;
            }
            expect(Tok::RBracket, "']'");
            return make_expr({std::move(m)});
        }
        if (t.kind != Tok::Cmp)
            throw ParseError(t.pos, "expected a comparison operator or 'in'");
        CmpOp op1 = cmp_op(lx_.take());
        Operand mid = parse_operand();
        if (lx_.peek().kind == Tok::Cmp) {
            // chained form: lo op field op hi, desugared to a conjunction
            Token t2 = lx_.peek();
            if (!std::holds_alternative<FieldRef>(mid))
                throw ParseError(t2.pos, "chained comparison requires a field in the middle");
            CmpOp op2 = cmp_op(lx_.take());
            Operand rhs = parse_operand();
            ConstraintPtr a = make_expr({Comparison{op1, lhs, mid}});
            ConstraintPtr b = make_expr({Comparison{op2, mid, rhs}});
            return make_expr({AndExpr{a, b}});
        }
        return make_expr({Comparison{op1, std::move(lhs), std::move(mid)}});
    }

    Operand parse_operand() {
        Token t = lx_.peek();
        if (t.kind == Tok::Ident && t.text != "date" && t.text != "true" &&
            t.text != "false") {
            lx_.take();
            return FieldRef{t.text, t.pos};
        }
        return parse_literal();
    }

    LiteralVal parse_literal() {
        Token t = lx_.take();
        switch (t.kind) {
            case Tok::Int: return {MetadataValue{t.ival}, t.pos};
            case Tok::Real: return {MetadataValue{t.rval}, t.pos};
            case Tok::String: return {MetadataValue{t.text}, t.pos};
            case Tok::DateLit: return {MetadataValue{t.dval}, t.pos};
            case Tok::Ident:
                if (t.text == "true") return {MetadataValue{true}, t.pos};
                if (t.text == "false") return {MetadataValue{false}, t.pos};
                if (t.text == "date") return parse_date_call(t.pos);
                break;
            default: break;
        }
        throw ParseError(t.pos, "expected a literal value");
    }

    LiteralVal parse_date_call(SourcePos pos) {
        expect(Tok::LParen, "'('");
        std::int64_t y = expect_int("year");
        expect(Tok::Comma, "','");
        std::int64_t m = expect_int("month");
        expect(Tok::Comma, "','");
        std::int64_t d = expect_int("day");
        expect(Tok::RParen, "')'");
        if (!Date::valid(static_cast<int>(y), static_cast<int>(m), static_cast<int>(d)))
            throw ParseError(pos, "invalid calendar date");
        return {MetadataValue{Date{static_cast<int>(y), static_cast<int>(m),
                                   static_cast<int>(d)}},
                pos};
    }

    static CmpOp cmp_op(const Token& t) {
        if (t.text == "<") return CmpOp::Lt;
        if (t.text == "<=") return CmpOp::Le;
        if (t.text == ">") return CmpOp::Gt;
        if (t.text == ">=") return CmpOp::Ge;
        if (t.text == "==") return CmpOp::Eq;
        return CmpOp::Ne;
    }

    // ---- static checks: constraints vs schema, operator depth discipline ----

    // Returns the set depth after running the steps from `depth`.
    static int check_steps(const std::vector<Step>& steps, const MetadataSchema& schema,
                           int depth) {
        for (const auto& s : steps) {
            if (const auto* f = std::get_if<FilterStep>(&s.node)) {
                require_depth0(s, depth, "filter");
                check_constraint(*f->constraint, schema);
            } else if (std::holds_alternative<RandomStep>(s.node)) {
                require_depth0(s, depth, "random");
            } else if (const auto* sy = std::get_if<SystematicStep>(&s.node)) {
                require_depth0(s, depth, "systematic");
                auto k = schema.kind_of(sy->order_field);
                if (!k) throw ParseError(s.pos, "unknown field '" + sy->order_field + "'");
                if (*k != FieldKind::Integer && *k != FieldKind::Real && *k != FieldKind::Date)
                    throw ParseError(s.pos, "order field '" + sy->order_field +
                                                "' is not numeric or date");
            } else if (std::holds_alternative<ManualStep>(s.node)) {
                require_depth0(s, depth, "manual");
            } else if (const auto* g = std::get_if<GroupStep>(&s.node)) {
                require_depth0(s, depth, "group");
                int end = -1;
                for (const auto& b : g->branches) {
                    int bd = check_steps(b.steps, schema, depth);
                    if (end == -1) end = bd;
                    if (bd != end)
                        throw ParseError(s.pos,
                                         "group branches end at different set depths");
                }
                depth = end + 1;
                continue;
            } else if (const auto* st = std::get_if<StratifiedStep>(&s.node)) {
                require_depth0(s, depth, "stratified");
                for (const auto& x : st->strata) check_constraint(*x.where, schema);
                depth = 1;
                continue;
            } else if (const auto* cl = std::get_if<ClusterStep>(&s.node)) {
                require_depth0(s, depth, "cluster");
                for (const auto& x : cl->strata) check_constraint(*x.where, schema);
                if (cl->pick > static_cast<std::int64_t>(cl->strata.size()))
                    throw ParseError(s.pos, "cluster picks more groups than declared");
                depth = 1;
                continue;
            } else if (const auto* q = std::get_if<QuotaStep>(&s.node)) {
                require_depth0(s, depth, "quota");
                for (const auto& b : q->branches) check_constraint(*b.stratum.where, schema);
                depth = 1;
                continue;
            } else if (std::holds_alternative<UnionStep>(s.node) ||
                       std::holds_alternative<IntersectionStep>(s.node)) {
                if (depth < 1)
                    throw ParseError(s.pos, "set operator requires a set of sets");
                --depth;
                continue;
            } else if (const auto* am = std::get_if<AddMetadataStep>(&s.node)) {
                require_depth0(s, depth, "add_metadata");
                if (!schema.kind_of(am->join_key))
                    throw ParseError(s.pos, "unknown field '" + am->join_key + "'");
                // joined-in fields are only known at execution time; constraints
                // referencing them cannot be declared downstream in this grammar
            }
        }
        return depth;
    }

    static void require_depth0(const Step& s, int depth, const char* op) {
        if (depth != 0)
            throw ParseError(s.pos, std::string(op) + " operates on a set of artifacts, not a set of sets");
    }

    // ---- token helpers ----

    bool peek_keyword(const char* kw) const {
        return lx_.peek().kind == Tok::Ident && lx_.peek().text == kw;
    }

    void expect_keyword(const char* kw) {
        Token t = lx_.take();
        if (t.kind != Tok::Ident || t.text != kw)
            throw ParseError(t.pos, std::string("expected '") + kw + "'");
    }

    Token expect(Tok kind, const char* what) {
        Token t = lx_.take();
        if (t.kind != kind) throw ParseError(t.pos, std::string("expected ") + what);
        return t;
    }

    std::string expect_ident(const char* what) {
        Token t = lx_.take();
        if (t.kind != Tok::Ident) throw ParseError(t.pos, std::string("expected ") + what);
        return t.text;
    }

    std::int64_t expect_int(const char* what) {
        Token t = lx_.take();
        if (t.kind != Tok::Int) throw ParseError(t.pos, std::string("expected ") + what);
        return t.ival;
    }

    std::int64_t expect_count(const char* what) {
        Token t = lx_.peek();
        std::int64_t v = expect_int(what);
        if (v < 0) throw ParseError(t.pos, std::string(what) + " must be >= 0");
        return v;
    }

    std::uint64_t expect_seed() {
        Token t = lx_.peek();
        std::int64_t v = expect_int("seed");
        if (v < 0) throw ParseError(t.pos, "seed must be >= 0");
        return static_cast<std::uint64_t>(v);
    }

    void expect_end() {
        Token t = lx_.peek();
        if (t.kind != Tok::End) throw ParseError(t.pos, "unexpected trailing input");
    }

    Lexer lx_;
};

// ---- pretty printer ----

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

void print_steps(const std::vector<Step>& steps, int indent, std::string& out);

void print_step(const Step& s, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    out += pad;
    if (const auto* f = std::get_if<FilterStep>(&s.node)) {
        out += "filter " + print_constraint(*f->constraint);
    } else if (const auto* r = std::get_if<RandomStep>(&s.node)) {
        out += "random " + std::to_string(r->n) + " seed " + std::to_string(r->seed);
    } else if (const auto* sy = std::get_if<SystematicStep>(&s.node)) {
        out += "systematic " + std::to_string(sy->n) + " order_by " + sy->order_field +
               (sy->ascending ? " asc" : " desc") + " seed " + std::to_string(sy->seed);
    } else if (const auto* m = std::get_if<ManualStep>(&s.node)) {
        out += "manual [";
        for (std::size_t i = 0; i < m->ids.size(); ++i) {
            if (i) out += ", ";
            out += quote(m->ids[i]);
        }
        out += "]";
    } else if (const auto* g = std::get_if<GroupStep>(&s.node)) {
        out += "group {\n";
        for (const auto& b : g->branches) {
            out += pad + "  branch " + b.label + " {\n";
            print_steps(b.steps, indent + 2, out);
            out += pad + "  }\n";
        }
        out += pad + "}";
    } else if (const auto* st = std::get_if<StratifiedStep>(&s.node)) {
        out += "stratified {\n";
        for (const auto& x : st->strata)
            out += pad + "  stratum " + x.label + " where " + print_constraint(*x.where) + "\n";
        out += pad + "} take " + std::to_string(st->take) + " seed " + std::to_string(st->seed);
    } else if (const auto* cl = std::get_if<ClusterStep>(&s.node)) {
        out += "cluster {\n";
        for (const auto& x : cl->strata)
            out += pad + "  stratum " + x.label + " where " + print_constraint(*x.where) + "\n";
        out += pad + "} pick " + std::to_string(cl->pick) + " seed " + std::to_string(cl->seed);
    } else if (const auto* q = std::get_if<QuotaStep>(&s.node)) {
        out += "quota {\n";
        for (const auto& b : q->branches) {
            out += pad + "  stratum " + b.stratum.label + " where " +
                   print_constraint(*b.stratum.where) + " take [";
            for (std::size_t i = 0; i < b.ids.size(); ++i) {
                if (i) out += ", ";
                out += quote(b.ids[i]);
            }
            out += "]\n";
        }
        out += pad + "}";
    } else if (std::holds_alternative<UnionStep>(s.node)) {
        out += "union";
    } else if (std::holds_alternative<IntersectionStep>(s.node)) {
        out += "intersection";
    } else if (const auto* am = std::get_if<AddMetadataStep>(&s.node)) {
        out += std::string("add_metadata ") + to_string(am->kind) + " " + quote(am->path) +
               " join " + am->join_key;
    }
    out += "\n";
}

void print_steps(const std::vector<Step>& steps, int indent, std::string& out) {
    for (const auto& s : steps) print_step(s, indent, out);
}

}  // namespace

Workflow parse_workflow(const std::string& text) {
    return Parser(text).parse_document();
}

ConstraintPtr parse_constraint(const std::string& text) {
    return Parser(text).parse_constraint_only();
}

std::string pretty_print(const Workflow& w) {
    std::string out;
    out += std::string("input ") + to_string(w.input.kind) + " " + quote(w.input.path) +
           " key " + w.input.schema.key_field + " {\n";
    for (std::size_t i = 0; i < w.input.schema.entries.size(); ++i) {
        const auto& e = w.input.schema.entries[i];
        out += "  " + e.name + ": " + to_string(e.kind);
        out += i + 1 < w.input.schema.entries.size() ? ",\n" : "\n";
    }
    out += "}\n";
    if (!w.steps.empty()) {
        out += "\n";
        print_steps(w.steps, 0, out);
    }
    return out;
}

}  // namespace swf
