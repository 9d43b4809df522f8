#include "fpcalc/dsl.hpp"

#include "fpcalc/quadext.hpp"

#include <cctype>

namespace fpcalc {

namespace {

enum class Tok {
    Ident, Int,
    LParen, RParen, LBracket, RBracket,
    Comma, Colon, Semicolon, Star, Slash, Plus, Minus, Caret,
    DirectSum,  // "(+)"
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run(std::vector<ParseDiagnostic>& diags) {
        std::vector<Token> out;
        for (;;) {
            skip_ws();
            const SourceSpan span = here();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "", span});
                return out;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_])))
                    advance();
                out.push_back({Tok::Ident, std::string(src_.substr(start, pos_ - start)), span});
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    advance();
                out.push_back({Tok::Int, std::string(src_.substr(start, pos_ - start)), span});
                continue;
            }
            if (c == '(' && direct_sum_ahead()) {
                out.push_back({Tok::DirectSum, "(+)", span});
                continue;
            }
            Tok kind;
            switch (c) {
                case '(': kind = Tok::LParen; break;
                case ')': kind = Tok::RParen; break;
                case '[': kind = Tok::LBracket; break;
                case ']': kind = Tok::RBracket; break;
                case ',': kind = Tok::Comma; break;
                case ':': kind = Tok::Colon; break;
                case ';': kind = Tok::Semicolon; break;
                case '*': kind = Tok::Star; break;
                case '/': kind = Tok::Slash; break;
                case '+': kind = Tok::Plus; break;
                case '-': kind = Tok::Minus; break;
                case '^': kind = Tok::Caret; break;
                default:
                    diags.push_back({span, std::string("unexpected character '") + c + "'"});
                    out.push_back({Tok::End, "", span});
                    return out;
            }
            out.push_back({kind, std::string(1, c), span});
            advance();
        }
    }

private:
    SourceSpan here() const { return {line_, col_, pos_}; }

    void advance() {
        if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }

    // "(+)" with interior whitespace allowed; a real algebra never starts
    // with '+', so this never misfires.
    bool direct_sum_ahead() {
        const std::size_t save_pos = pos_;
        const std::size_t save_line = line_, save_col = col_;
        advance();  // '('
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '+') {
            advance();
            skip_ws();
            if (pos_ < src_.size() && src_[pos_] == ')') {
                advance();
                return true;
            }
        }
        pos_ = save_pos; line_ = save_line; col_ = save_col;
        return false;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1, col_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> toks, std::vector<ParseDiagnostic>& diags)
        : toks_(std::move(toks)), diags_(diags) {}

    std::optional<ProblemDoc> problem() {
        ProblemDoc doc;
        if (at_ident("field")) {
            if (!header(doc)) return std::nullopt;
            if (at_ident("field")) return fail("duplicate field header");
        }
        field_d_ = doc.field_d;
        for (;;) {
            auto alg = algebra(doc.algebras.size());
            if (!alg) return std::nullopt;
            doc.algebras.push_back(std::move(*alg));
            if (peek().kind != Tok::Star) break;
            next();
        }
        if (peek().kind != Tok::End) return fail("expected '*' or end of input");
        if (doc.algebras.size() < 2) return fail("a free product needs at least 2 algebras");
        return doc;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool at_ident(std::string_view name) const {
        return peek().kind == Tok::Ident && peek().text == name;
    }

    std::nullopt_t fail(std::string message) {
        diags_.push_back({peek().span, std::move(message)});
        return std::nullopt;
    }

    bool expect(Tok kind, const char* what) {
        if (peek().kind != kind) {
            fail(std::string("expected ") + what);
            return false;
        }
        next();
        return true;
    }

    std::optional<BigInt> integer() {
        if (peek().kind != Tok::Int) return fail("expected an integer");
        BigInt v(next().text);
        return v;
    }

    std::optional<long long> small_integer() {
        auto v = integer();
        if (!v) return std::nullopt;
        if (*v > 1'000'000'000) return fail("integer literal too large here");
        return v->convert_to<long long>();
    }

    bool header(ProblemDoc& doc) {
        next();  // field
        if (!at_ident("sqrt")) { fail("expected sqrt( after field"); return false; }
        next();
        if (!expect(Tok::LParen, "'('")) return false;
        const Token radicand_tok = peek();
        auto radicand = small_integer();
        if (!radicand) return false;
        if (!expect(Tok::RParen, "')'")) return false;
        if (!expect(Tok::Semicolon, "';'")) return false;
        if (*radicand < 2) {
            diags_.push_back({radicand_tok.span, "field radicand must be >= 2"});
            return false;
        }
        doc.field_d = QuadExt::reduce_radicand(*radicand).first;
        return true;
    }

    std::optional<Rational> rational() {
        bool neg = false;
        if (peek().kind == Tok::Minus) { next(); neg = true; }
        auto num = integer();
        if (!num) return std::nullopt;
        BigInt den = 1;
        if (peek().kind == Tok::Slash) {
            next();
            const Token den_tok = peek();
            auto d = integer();
            if (!d) return std::nullopt;
            if (*d == 0) {
                diags_.push_back({den_tok.span, "zero denominator"});
                return std::nullopt;
            }
            den = *d;
        }
        return Rational(neg ? -*num : *num, den);
    }

    std::optional<ExactScalar> scalar() {
        auto a = rational();
        if (!a) return std::nullopt;
        int sign = 0;
        if (peek().kind == Tok::Plus) sign = 1;
        else if (peek().kind == Tok::Minus) sign = -1;
        if (sign == 0) return ExactScalar(*a);

        const Token op_tok = peek();
        next();
        auto b = rational();
        if (!b) return std::nullopt;
        if (!expect(Tok::Star, "'*'")) return std::nullopt;
        if (!at_ident("sqrt")) return fail("expected sqrt( in quadratic literal");
        next();
        if (!expect(Tok::LParen, "'('")) return std::nullopt;
        const Token radicand_tok = peek();
        auto radicand = small_integer();
        if (!radicand) return std::nullopt;
        if (!expect(Tok::RParen, "')'")) return std::nullopt;
        if (*radicand < 2) {
            diags_.push_back({radicand_tok.span, "sqrt radicand must be >= 2"});
            return std::nullopt;
        }
        auto [d, s] = QuadExt::reduce_radicand(*radicand);
        if (!field_d_) {
            diags_.push_back({op_tok.span, "quadratic literal without a field sqrt(d); header"});
            return std::nullopt;
        }
        if (d != *field_d_) {
            diags_.push_back({radicand_tok.span,
                              "sqrt(" + std::to_string(*radicand) + ") lies in sqrt(" +
                                  std::to_string(d) + "), but the field declares sqrt(" +
                                  std::to_string(*field_d_) + ")"});
            return std::nullopt;
        }
        Rational coeff = *b * Rational(s);
        if (sign < 0) coeff = -coeff;
        return ExactScalar(QuadExt(d, *a, coeff));
    }

    std::optional<RadicalReal> radical_factor() {
        const Token base_tok = peek();
        auto base = rational();
        if (!base) return std::nullopt;
        Rational exponent(1);
        if (peek().kind == Tok::Caret) {
            next();
            if (!expect(Tok::LParen, "'('")) return std::nullopt;
            auto e = rational();
            if (!e) return std::nullopt;
            if (!expect(Tok::RParen, "')'")) return std::nullopt;
            exponent = *e;
        }
        if (base->sign() <= 0) {
            diags_.push_back({base_tok.span, "radical base must be positive"});
            return std::nullopt;
        }
        return RadicalReal::from_power(*base, exponent);
    }

    std::optional<RadicalReal> radical() {
        auto value = radical_factor();
        if (!value) return std::nullopt;
        while (peek().kind == Tok::Star) {
            next();
            auto factor = radical_factor();
            if (!factor) return std::nullopt;
            value = *value * *factor;
        }
        return value;
    }

    std::optional<Term> term(std::size_t index) {
        if (peek().kind != Tok::Ident) return fail("expected a summand (C, M, BH, III, HYP, LF)");
        const std::string head = peek().text;
        const std::string label = "m" + std::to_string(index + 1);
        next();

        if (head == "C") {
            if (!expect(Tok::Colon, "':'")) return std::nullopt;
            auto w = scalar();
            if (!w) return std::nullopt;
            return Term(MatrixSummand{1, {*w}, label});
        }
        if (head == "M") {
            auto n = small_integer();
            if (!n) return std::nullopt;
            if (*n < 1) return fail("matrix size must be >= 1");
            if (!expect(Tok::Colon, "':'")) return std::nullopt;
            if (!expect(Tok::LBracket, "'['")) return std::nullopt;
            std::vector<ExactScalar> weights;
            for (;;) {
                auto w = scalar();
                if (!w) return std::nullopt;
                weights.push_back(std::move(*w));
                if (peek().kind != Tok::Comma) break;
                next();
            }
            const Token close_tok = peek();
            if (!expect(Tok::RBracket, "']'")) return std::nullopt;
            if (weights.size() != static_cast<std::size_t>(*n)) {
                diags_.push_back({close_tok.span,
                                  "M" + std::to_string(*n) + " expects " + std::to_string(*n) +
                                      " weights, got " + std::to_string(weights.size())});
                return std::nullopt;
            }
            return Term(MatrixSummand{static_cast<std::size_t>(*n), std::move(weights), label});
        }
        if (head == "BH") {
            if (!expect(Tok::Colon, "':'")) return std::nullopt;
            if (!at_ident("geom")) return fail("expected geom( after BH:");
            next();
            if (!expect(Tok::LParen, "'('")) return std::nullopt;
            auto mass = scalar();
            if (!mass) return std::nullopt;
            if (!expect(Tok::Comma, "','")) return std::nullopt;
            auto ratio = rational();
            if (!ratio) return std::nullopt;
            if (!expect(Tok::RParen, "')'")) return std::nullopt;
            return Term(make_bh_atom(*mass, *ratio));
        }
        if (head == "III") {
            if (!expect(Tok::LParen, "'('")) return std::nullopt;
            TypeIiiAtom atom;
            for (;;) {
                auto g = radical();
                if (!g) return std::nullopt;
                atom.sd_generators.push_back(std::move(*g));
                if (peek().kind != Tok::Comma) break;
                next();
            }
            if (!expect(Tok::Semicolon, "';'")) return std::nullopt;
            if (at_ident("R")) atom.centralizer = TypeIiiAtom::Centralizer::HyperfiniteR;
            else if (at_ident("LFinf")) atom.centralizer = TypeIiiAtom::Centralizer::LFreeInfinity;
            else return fail("expected centralizer tag R or LFinf");
            next();
            if (!expect(Tok::RParen, "')'")) return std::nullopt;
            if (!expect(Tok::Colon, "':'")) return std::nullopt;
            auto mass = scalar();
            if (!mass) return std::nullopt;
            return Term(SpecialAtom{std::move(atom), *mass});
        }
        if (head == "HYP") {
            if (!expect(Tok::Colon, "':'")) return std::nullopt;
            auto mass = scalar();
            if (!mass) return std::nullopt;
            return Term(SpecialAtom{DiffuseTracialAtom{}, *mass});
        }
        if (head == "LF") {
            if (!expect(Tok::LParen, "'('")) return std::nullopt;
            FreeGroupFactorAtom atom;
            if (peek().kind != Tok::RParen) {
                auto p = rational();
                if (!p) return std::nullopt;
                atom.param = *p;
            }
            if (!expect(Tok::RParen, "')'")) return std::nullopt;
            if (!expect(Tok::Colon, "':'")) return std::nullopt;
            auto mass = scalar();
            if (!mass) return std::nullopt;
            return Term(SpecialAtom{std::move(atom), *mass});
        }
        return fail("unknown summand kind '" + head + "'");
    }

    std::optional<Algebra> algebra(std::size_t index) {
        Algebra a;
        a.name = "A" + std::to_string(index + 1);
        const bool wrapped = peek().kind == Tok::LParen;
        if (wrapped) next();
        for (;;) {
            auto t = term(a.terms.size());
            if (!t) return std::nullopt;
            a.terms.push_back(std::move(*t));
            if (peek().kind != Tok::DirectSum) break;
            next();
        }
        if (wrapped && !expect(Tok::RParen, "')'")) return std::nullopt;
        return a;
    }

    std::vector<Token> toks_;
    std::vector<ParseDiagnostic>& diags_;
    std::size_t pos_ = 0;
    std::optional<long long> field_d_;
};

}  // namespace

ParseResult parse_problem(std::string_view text) {
    ParseResult result;
    Lexer lexer(text);
    auto tokens = lexer.run(result.diagnostics);
    if (!result.diagnostics.empty()) return result;
    Parser parser(std::move(tokens), result.diagnostics);
    result.doc = parser.problem();
    if (!result.diagnostics.empty()) result.doc.reset();
    return result;
}

namespace {

std::string render_term(const Term& term) {
    if (auto* m = std::get_if<MatrixSummand>(&term)) {
        if (m->size == 1) return "C:" + m->weights[0].str();
        std::string s = "M" + std::to_string(m->size) + ":[";
        for (std::size_t i = 0; i < m->weights.size(); ++i) {
            if (i) s += ",";
            s += m->weights[i].str();
        }
        return s + "]";
    }
    const auto& atom = std::get<SpecialAtom>(term);
    if (auto* bh = std::get_if<BhGeometricAtom>(&atom.kind))
        return "BH:geom(" + atom.mass.str() + "," + bh->ratio.str() + ")";
    if (auto* t3 = std::get_if<TypeIiiAtom>(&atom.kind)) {
        std::string s = "III(";
        for (std::size_t i = 0; i < t3->sd_generators.size(); ++i) {
            if (i) s += ",";
            s += t3->sd_generators[i].str();
        }
        s += t3->centralizer == TypeIiiAtom::Centralizer::HyperfiniteR ? ";R)" : ";LFinf)";
        return s + ":" + atom.mass.str();
    }
    if (std::holds_alternative<DiffuseTracialAtom>(atom.kind)) return "HYP:" + atom.mass.str();
    const auto& lf = std::get<FreeGroupFactorAtom>(atom.kind);
    return "LF(" + (lf.param ? lf.param->str() : std::string()) + "):" + atom.mass.str();
}

}  // namespace

std::string render_problem(const ProblemDoc& doc) {
    std::string s;
    if (doc.field_d) s += "field sqrt(" + std::to_string(*doc.field_d) + ");\n";
    for (std::size_t i = 0; i < doc.algebras.size(); ++i) {
        if (i) s += " * ";
        const Algebra& a = doc.algebras[i];
        if (a.terms.size() == 1) {
            s += render_term(a.terms[0]);
        } else {
            s += "(";
            for (std::size_t t = 0; t < a.terms.size(); ++t) {
                if (t) s += " (+) ";
                s += render_term(a.terms[t]);
            }
            s += ")";
        }
    }
    s += "\n";
    return s;
}

std::optional<Rational> parse_rational_literal(std::string_view text) {
    return Rational::parse(text);
}

namespace {

std::optional<RadicalReal> parse_radical_factor(std::string_view text, const FactorOptions& opts) {
    const std::size_t caret = text.find("^(");
    if (caret == std::string_view::npos) {
        auto base = Rational::parse(text);
        if (!base || base->sign() <= 0) return std::nullopt;
        return RadicalReal::from_rational(*base, opts);
    }
    if (text.empty() || text.back() != ')') return std::nullopt;
    auto base = Rational::parse(text.substr(0, caret));
    auto exponent = Rational::parse(text.substr(caret + 2, text.size() - caret - 3));
    if (!base || !exponent || base->sign() <= 0) return std::nullopt;
    return RadicalReal::from_power(*base, *exponent, opts);
}

}  // namespace

std::optional<RadicalReal> parse_radical_literal(std::string_view text, const FactorOptions& opts) {
    // product of factors b or b^(p/q); '*' never occurs inside a factor
    RadicalReal out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t star = text.find('*', start);
        const std::size_t end = star == std::string_view::npos ? text.size() : star;
        auto factor = parse_radical_factor(text.substr(start, end - start), opts);
        if (!factor) return std::nullopt;
        out = out * *factor;
        if (star == std::string_view::npos) return out;
        start = star + 1;
    }
}

std::optional<ExactScalar> parse_scalar_literal(std::string_view text) {
    // a+b*sqrt(d) | a-b*sqrt(d) | rational; scans for the sign that splits
    // the two parts (skipping a leading sign on a).
    const std::size_t sqrt_pos = text.find("*sqrt(");
    if (sqrt_pos == std::string_view::npos) {
        auto r = Rational::parse(text);
        if (!r) return std::nullopt;
        return ExactScalar(*r);
    }
    if (text.back() != ')') return std::nullopt;
    std::size_t split = std::string_view::npos;
    for (std::size_t i = 1; i < sqrt_pos; ++i)
        if (text[i] == '+' || text[i] == '-') split = i;
    if (split == std::string_view::npos) return std::nullopt;
    auto a = Rational::parse(text.substr(0, split));
    auto b = Rational::parse(text.substr(split + 1, sqrt_pos - split - 1));
    const std::string rad_text(text.substr(sqrt_pos + 6, text.size() - sqrt_pos - 7));
    if (!a || !b || rad_text.empty()) return std::nullopt;
    long long radicand = 0;
    for (char c : rad_text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        radicand = radicand * 10 + (c - '0');
        if (radicand > 1'000'000'000) return std::nullopt;
    }
    if (radicand < 2) return std::nullopt;
    auto [d, s] = QuadExt::reduce_radicand(radicand);
    Rational coeff = *b * Rational(s);
    if (text[split] == '-') coeff = -coeff;
    return ExactScalar(QuadExt(d, *a, coeff));
}

}  // namespace fpcalc
