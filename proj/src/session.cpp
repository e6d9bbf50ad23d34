#include "expfield/session.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <set>
#include <sstream>

namespace expfield {

namespace {

// ---------------------------------------------------------------- parsing

struct Raw {
    std::string text;
    std::size_t offset = 0;
};

std::string collapse_ws(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            space = !out.empty();
        } else {
            if (space) out += ' ';
            space = false;
            out += c;
        }
    }
    return out;
}

Raw trim(const Raw& r) {
    std::size_t b = 0, e = r.text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(r.text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(r.text[e - 1]))) --e;
    return {r.text.substr(b, e - b), r.offset + b};
}

class SessionParser {
public:
    explicit SessionParser(std::string_view text) : src_(text) {}

    Session parse() {
        while (true) {
            skip();
            if (pos_ >= src_.size()) break;
            const std::size_t start = pos_;
            const std::string word = peek_word();
            if (word == "variety") variety();
            else if (word == "efield") efield();
            else if (word == "exppolys") exppolys();
            else command(start, word);
        }
        return std::move(s_);
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    std::map<std::string, char> kinds_;  // 'v' variety, 'f' field, 's' system
    Session s_;

    std::pair<std::size_t, std::size_t> where(std::size_t off) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < off && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }

    [[noreturn]] void fail(const std::string& msg, std::size_t off) const {
        auto [l, c] = where(off);
        throw ParseError(msg, l, c);
    }

    void skip() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    static bool word_char(char c, bool first) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
               (!first && (std::isdigit(static_cast<unsigned char>(c)) || c == '-'));
    }

    std::string peek_word() {
        skip();
        std::size_t p = pos_;
        while (p < src_.size() && word_char(src_[p], p == pos_)) ++p;
        return std::string(src_.substr(pos_, p - pos_));
    }

    bool accept_word(const std::string& w) {
        if (peek_word() != w) return false;
        pos_ += w.size();
        return true;
    }

    void expect_word(const std::string& w) {
        if (!accept_word(w)) fail("expected '" + w + "'", pos_);
    }

    std::string ident() {
        skip();
        std::size_t p = pos_;
        while (p < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[p])) || src_[p] == '_' ||
                                   (p > pos_ && std::isdigit(static_cast<unsigned char>(src_[p])))))
            ++p;
        if (p == pos_) fail("expected a name", pos_);
        std::string out(src_.substr(pos_, p - pos_));
        pos_ = p;
        return out;
    }

    bool accept(char c) {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'", pos_);
    }

    std::size_t natural() {
        skip();
        std::size_t p = pos_;
        while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
        if (p == pos_) fail("expected a natural number", pos_);
        std::size_t v = std::stoul(std::string(src_.substr(pos_, p - pos_)));
        pos_ = p;
        return v;
    }

    // Content between a '{' and its matching '}'.
    Raw block() {
        expect('{');
        const std::size_t start = pos_;
        int depth = 1;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
                continue;
            }
            if (c == '{') ++depth;
            if (c == '}' && --depth == 0) break;
            ++pos_;
        }
        if (pos_ >= src_.size()) fail("unterminated '{'", start - 1);
        Raw r{std::string(src_.substr(start, pos_ - start)), start};
        ++pos_;
        return r;
    }

    // Items of a block separated by ';' or newlines, comments removed.
    static std::vector<Raw> items(const Raw& block) {
        std::vector<Raw> out;
        std::string cur;
        std::size_t cur_off = block.offset;
        bool comment = false;
        auto flush = [&](std::size_t next) {
            Raw t = trim({cur, cur_off});
            if (!t.text.empty()) out.push_back(t);
            cur.clear();
            cur_off = next;
        };
        for (std::size_t i = 0; i < block.text.size(); ++i) {
            char c = block.text[i];
            if (c == '\n' || c == ';') {
                comment = false;
                flush(block.offset + i + 1);
                continue;
            }
            if (c == '#') comment = true;
            cur += comment ? ' ' : c;
        }
        flush(block.offset + block.text.size());
        return out;
    }

    // '(' raw {',' raw} ')' with nested parentheses kept inside an element.
    std::vector<std::string> tuple() {
        expect('(');
        std::vector<std::string> out;
        std::string cur;
        int depth = 0;
        const std::size_t start = pos_ - 1;
        while (true) {
            if (pos_ >= src_.size()) fail("unterminated '('", start);
            char c = src_[pos_++];
            if (c == '(') ++depth;
            if (c == ')' && depth-- == 0) break;
            if (c == ',' && depth == 0) {
                out.push_back(collapse_ws(cur));
                cur.clear();
                continue;
            }
            cur += c;
        }
        std::string last = collapse_ws(cur);
        if (!last.empty() || !out.empty()) out.push_back(last);
        for (const auto& e : out)
            if (e.empty()) fail("empty element in tuple", start);
        return out;
    }

    std::vector<std::string> idlist() {
        std::vector<std::string> out{ident()};
        while (accept(',')) out.push_back(ident());
        return out;
    }

    std::vector<std::string> params_clause() {
        if (accept('{')) {
            std::vector<std::string> out;
            if (!accept('}')) {
                out = idlist();
                expect('}');
            }
            return out;
        }
        return idlist();
    }

    void declare(const std::string& name, char kind, std::size_t off) {
        if (kinds_.count(name)) fail("duplicate: " + name, off);
        kinds_[name] = kind;
    }

    std::string ref(char kind) {
        skip();
        const std::size_t off = pos_;
        std::string name = ident();
        auto it = kinds_.find(name);
        if (it == kinds_.end()) fail("undefined: " + name, off);
        if (it->second != kind) {
            static const std::map<char, std::string> what{{'v', "a variety"}, {'f', "an efield"}, {'s', "an exppolys system"}};
            fail(name + " is not " + what.at(kind), off);
        }
        return name;
    }

    // Splits "lhs = rhs" and parses both sides with `parse`, remapping error positions.
    template <typename Parse>
    MultiPoly equation(const Raw& item, Parse parse) {
        auto eq = item.text.find('=');
        std::vector<Raw> sides;
        if (eq == std::string::npos) {
            sides.push_back(item);
        } else {
            if (item.text.find('=', eq + 1) != std::string::npos) fail("more than one '=' in an equation", item.offset);
            sides.push_back(trim({item.text.substr(0, eq), item.offset}));
            sides.push_back(trim({item.text.substr(eq + 1), item.offset + eq + 1}));
        }
        std::vector<MultiPoly> polys;
        for (const auto& side : sides) {
            if (side.text.empty()) fail("empty side of an equation", side.offset);
            try {
                polys.push_back(parse(side.text));
            } catch (const ParseError& e) {
                fail(e.message(), side.offset + (e.column() ? e.column() - 1 : 0));
            } catch (const DomainError& e) {
                fail(e.what(), side.offset);
            }
        }
        return polys.size() == 1 ? polys[0] : polys[0] - polys[1];
    }

    void variety() {
        const std::size_t start = pos_;
        expect_word("variety");
        skip();
        const std::size_t name_off = pos_;
        std::string name = ident();
        declare(name, 'v', name_off);
        expect_word("in");
        expect_word("G");
        expect('^');
        const std::size_t n = natural();
        if (n == 0) fail("varieties live in G^n with n >= 1", pos_ - 1);
        Raw body = block();
        std::vector<std::string> params;
        if (accept_word("params")) params = params_clause();
        RingPtr ring = gn_ring(n, params);
        std::vector<MultiPoly> gens;
        for (const auto& item : items(body))
            gens.push_back(equation(item, [&](const std::string& t) { return parse_polynomial(t, ring); }));
        try {
            s_.varieties.emplace(name, GVariety(ring, gens));
        } catch (const std::exception& e) {
            fail(name + ": " + e.what(), start);
        }
    }

    void efield() {
        const std::size_t start = pos_;
        expect_word("efield");
        skip();
        const std::size_t name_off = pos_;
        std::string name = ident();
        declare(name, 'f', name_off);
        expect('{');
        std::vector<std::string> gens, params;
        std::optional<std::string> kernel;
        std::optional<Raw> relations;
        while (!accept('}')) {
            if (accept_word("gens")) {
                gens = idlist();
            } else if (accept_word("kernel")) {
                kernel = ident();
            } else if (accept_word("params")) {
                params = params_clause();
            } else if (peek_word() == "relations") {
                expect_word("relations");
                relations = block();
            } else {
                fail("expected gens, kernel, params, relations or '}'", pos_);
            }
            accept(';');
        }
        std::vector<std::string> basis;
        if (kernel) basis.push_back(*kernel);
        basis.insert(basis.end(), gens.begin(), gens.end());
        if (basis.empty()) fail(name + ": an efield needs gens or a kernel generator", start);
        const std::size_t n = basis.size();
        std::vector<std::string> geo = basis;
        for (const auto& b : basis) geo.push_back("__exp_" + b);
        RingPtr ring;
        try {
            ring = Ring::make(geo, params);
        } catch (const std::exception& e) {
            fail(name + ": " + e.what(), start);
        }
        std::vector<MultiPoly> eqs;
        if (kernel) eqs.push_back(MultiPoly::variable(ring, n) - MultiPoly::constant(ring, Rational(1)));
        if (relations)
            for (const auto& item : items(*relations))
                eqs.push_back(equation(item, [&](const std::string& t) { return parse_exppoly(t, n, ring).poly(); }));
        try {
            GVariety locus = GVariety(ring, eqs).rename(gn_ring(n, params));
            s_.fields.emplace(name, EFieldPresentation(basis, locus, kernel ? std::optional<std::size_t>(0) : std::nullopt));
        } catch (const std::exception& e) {
            fail(name + ": " + e.what(), start);
        }
    }

    void exppolys() {
        const std::size_t start = pos_;
        expect_word("exppolys");
        skip();
        const std::size_t name_off = pos_;
        std::string name = ident();
        declare(name, 's', name_off);
        expect_word("arity");
        const std::size_t n = natural();
        if (n == 0) fail("arity must be at least 1", pos_ - 1);
        Raw body = block();
        std::vector<std::string> params;
        if (accept_word("params")) params = params_clause();
        RingPtr ring = exp_ring(n, params);
        std::vector<ExpPoly> fs;
        for (const auto& item : items(body)) {
            if (item.text.find('=') != std::string::npos) fail("list exponential polynomials, not equations", item.offset);
            fs.emplace_back(n, equation(item, [&](const std::string& t) { return parse_exppoly(t, n, ring).poly(); }));
        }
        if (fs.empty()) fail(name + ": empty system", start);
        s_.systems.emplace(name, std::move(fs));
    }

    std::map<std::string, Rational> sample() {
        expect('{');
        std::map<std::string, Rational> out;
        RingPtr empty = Ring::make({});
        if (accept('}')) return out;
        do {
            std::string p = ident();
            expect('=');
            skip();
            const std::size_t off = pos_;
            while (pos_ < src_.size() && src_[pos_] != ',' && src_[pos_] != '}') ++pos_;
            std::string value = collapse_ws(src_.substr(off, pos_ - off));
            MultiPoly c(empty);
            try {
                c = parse_polynomial(value, empty);
            } catch (const std::exception&) {
                fail("expected a rational value for " + p, off);
            }
            out[p] = c.constant_term();
        } while (accept(','));
        expect('}');
        return out;
    }

    void command(std::size_t start, const std::string& word) {
        Command c;
        c.line = where(start).first;
        using K = Command::Kind;
        if (word.empty()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_);
        pos_ += word.size();
        if (word == "analyze") {
            c.kind = K::Analyze;
            c.names = {ref('v')};
        } else if (word == "extend") {
            c.kind = K::Extend;
            c.names.push_back(ref('f'));
            expect_word("by");
            c.names.push_back(ref('v'));
            expect_word("as");
            c.symbols = idlist();
            std::string into = c.names[0] + "_" + c.names[1];
            std::size_t off = start;
            if (accept_word("into")) {
                skip();
                off = pos_;
                into = ident();
            }
            declare(into, 'f', off);
            c.names.push_back(into);
        } else if (word == "delta" || word == "schanuel" || word == "hull") {
            c.kind = word == "delta" ? K::Delta : word == "schanuel" ? K::Schanuel : K::Hull;
            c.names = {ref('f')};
            c.tuple = tuple();
            if (c.kind == K::Delta && accept_word("over")) {
                c.has_over = true;
                c.over = tuple();
            }
        } else if (word == "strong") {
            c.kind = K::Strong;
            c.names = {ref('f')};
            if (accept_word("over")) {
                c.has_over = true;
                c.over = tuple();
            }
        } else if (word == "emit-axiom") {
            skip();
            const std::size_t off = pos_;
            std::string which = ident();
            if (which == "schanuel") {
                c.kind = K::EmitSchanuel;
                c.names = {ref('v')};
            } else if (which == "seac") {
                c.kind = K::EmitSeac;
                c.names = {ref('v')};
                skip();
                if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) c.number = natural();
            } else if (which == "ccp") {
                c.kind = K::EmitCcp;
                c.names = {ref('s')};
            } else if (which == "isolating") {
                c.kind = K::EmitIsolating;
                c.names = {ref('f')};
                c.tuple = tuple();
                if (accept_word("over")) {
                    c.has_over = true;
                    c.over = tuple();
                }
                expect_word("via");
                c.names.push_back(ref('v'));
                expect_word("witness");
                c.witness = tuple();
            } else {
                fail("unknown axiom '" + which + "' (schanuel, seac, ccp, isolating)", off);
            }
        } else if (word == "verify-witness") {
            c.kind = K::VerifyWitness;
            c.names.push_back(ref('s'));
            expect_word("in");
            c.names.push_back(ref('f'));
            expect_word("at");
            c.tuple = tuple();
        } else if (word == "iterated") {
            c.kind = K::Iterated;
            c.number = natural();
        } else if (word == "family-filter") {
            c.kind = K::FamilyFilter;
            c.names = {ref('v')};
            if (accept_word("at")) {
                c.samples.push_back(sample());
                while (accept(',')) c.samples.push_back(sample());
            }
        } else if (word == "isomorphic") {
            c.kind = K::Isomorphic;
            c.names.push_back(ref('f'));
            expect_word("by");
            c.names.push_back(ref('v'));
            expect(',');
            c.names.push_back(ref('v'));
        } else if (word == "khovanskii") {
            c.kind = K::Khovanskii;
            c.names = {ref('s')};
        } else {
            fail("unknown command '" + word + "'", start);
        }
        accept(';');
        c.text = collapse_ws(src_.substr(start, pos_ - start));
        if (!c.text.empty() && c.text.back() == ';') c.text.pop_back();
        s_.commands.push_back(std::move(c));
    }
};

// ---------------------------------------------------------------- JSON

Json integer_json(const Integer& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

Json int_matrix_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json strings(const std::vector<std::string>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(x);
    return a;
}

std::vector<std::string> poly_texts(const std::vector<MultiPoly>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(p.to_string());
    return out;
}

Json certificate_json(const FreenessCertificate& c) {
    Json j;
    j["verdict"] = to_string(c.verdict);
    if (c.kind == FreenessCertificate::Kind::Multiplicative) j["bound"] = c.bound;
    if (c.m) {
        Json m = Json::array();
        for (const auto& v : *c.m) m.push_back(integer_json(v));
        j["m"] = m;
        j["constant"] = c.constant_text();
        j["relation"] = c.kind == FreenessCertificate::Kind::Additive ? "sum m_i x_i = constant"
                                                                      : "prod y_i^m_i = constant";
    }
    return j;
}

Json rotundity_json(const RotundityReport& r) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["bound"] = r.bound;
    j["matrices_checked"] = r.matrices_checked;
    if (!r.shortcut.empty()) j["shortcut"] = r.shortcut;
    if (r.counterexample) {
        j["counterexample"] = {{"m", int_matrix_json(r.counterexample->m)},
                               {"image_dimension", r.counterexample->image_dimension},
                               {"rank", r.counterexample->rank}};
    }
    return j;
}

Json variety_json(const GVariety& v) {
    Json j;
    j["ambient"] = "G^" + std::to_string(v.n());
    j["parameters"] = strings(v.ring()->param_names());
    j["ideal"] = strings(poly_texts(v.generators()));
    j["irreducibility"] = "assumed";
    return j;
}

std::vector<std::string> element_texts(const EFieldPresentation& F, const RatMatrix& m) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(F.element_text(m.row(i)));
    return out;
}

Json presentation_json(const EFieldPresentation& F) {
    Json j;
    j["basis"] = strings(F.basis());
    if (F.kernel_symbol()) j["kernel"] = *F.kernel_symbol();
    j["locus"] = strings(poly_texts(F.locus().generators()));
    j["parameters"] = strings(F.locus().ring()->param_names());
    j["td"] = F.td();
    j["ldim"] = F.ldim();
    return j;
}

Json strong_json(const EFieldPresentation& F, const StrongResult& s) {
    Json j;
    j["verdict"] = s.strong ? "strong-up-to-bound" : "not-strong";
    j["bound"] = s.bound;
    j["tuples_checked"] = s.tuples_checked;
    if (s.witness) {
        j["witness"] = strings(element_texts(F, *s.witness));
        j["witness_delta"] = s.witness_delta;
    }
    return j;
}

Json sample_json(const std::map<std::string, Rational>& s) {
    Json j = Json::object();
    for (const auto& [k, v] : s) j[k] = v.to_string();
    return j;
}

Json member_json(const FamilyMemberReport& m) {
    Json j;
    j["sample"] = sample_json(m.sample);
    j["in_p_prime"] = m.in_p_prime;
    if (!m.reason.empty()) j["reason"] = m.reason;
    if (m.dimension) j["dimension"] = *m.dimension;
    if (m.additive) j["additive"] = certificate_json(*m.additive);
    if (m.multiplicative) j["multiplicative"] = certificate_json(*m.multiplicative);
    if (m.rotundity) j["rotundity"] = rotundity_json(*m.rotundity);
    return j;
}

// ---------------------------------------------------------------- running

class Runner {
public:
    Runner(const Session& s, const Bounds& b) : varieties_(s.varieties), fields_(s.fields), systems_(s.systems), b_(b) {}

    Json run(const Command& c) {
        using K = Command::Kind;
        switch (c.kind) {
            case K::Analyze: return analyze(variety(c.names[0]));
            case K::Extend: return extend(c);
            case K::Delta: return delta_cmd(c);
            case K::Schanuel: return schanuel(c);
            case K::Strong: return strong(c);
            case K::Hull: return hull(c);
            case K::EmitSchanuel: return formula_result("schanuel", schanuel_axiom_instance(variety(c.names[0])));
            case K::EmitSeac: return seac(c);
            case K::EmitCcp: return formula_result("ccp", ccp_axiom_instance(system(c.names[0])));
            case K::EmitIsolating: return isolating(c);
            case K::VerifyWitness: return verify(c);
            case K::Iterated: return iterated(c.number);
            case K::FamilyFilter: return family(c);
            case K::Isomorphic: return isomorphic(c);
            case K::Khovanskii: return khovanskii(system(c.names[0]));
        }
        return Json::object();
    }

private:
    std::map<std::string, GVariety> varieties_;
    std::map<std::string, EFieldPresentation> fields_;
    std::map<std::string, std::vector<ExpPoly>> systems_;
    Bounds b_;

    const GVariety& variety(const std::string& n) const { return varieties_.at(n); }
    const std::vector<ExpPoly>& system(const std::string& n) const { return systems_.at(n); }
    const EFieldPresentation& field(const std::string& n) const {
        auto it = fields_.find(n);
        if (it == fields_.end()) throw DomainError(n + " is unavailable because the command defining it failed");
        return it->second;
    }

    static RatMatrix elements(const EFieldPresentation& F, const std::vector<std::string>& texts) {
        std::vector<std::vector<Rational>> rows;
        for (const auto& t : texts) rows.push_back(F.parse_element(t));
        return element_matrix(F, rows);
    }

    Json analyze(const GVariety& v) const {
        Json j = variety_json(v);
        j["dimension"] = dimension(v);
        j["additive"] = certificate_json(is_additively_free(v, b_.budget));
        j["multiplicative"] = certificate_json(is_multiplicatively_free_up_to(v, b_.mult, b_.budget));
        j["rotundity"] = rotundity_json(is_rotund_up_to(v, b_.rotund, b_.budget));
        return j;
    }

    Json extend(const Command& c) {
        const EFieldPresentation& F = field(c.names[0]);
        Json j;
        j["base"] = c.names[0];
        j["variety"] = c.names[1];
        j["result"] = c.names[2];
        try {
            ExtensionResult r = extend_by_variety(F, variety(c.names[1]), c.symbols, b_);
            j["new_symbols"] = strings(r.new_symbols);
            j["dim_v"] = r.dim_v;
            j["exponentially_algebraic"] = r.exponentially_algebraic;
            j["additive"] = certificate_json(r.additive);
            j["multiplicative"] = certificate_json(r.multiplicative);
            j["rotundity"] = rotundity_json(r.rotundity);
            j["base_strong"] = strong_json(r.presentation, r.base_strong);
            const std::size_t n0 = F.size(), total = r.presentation.size();
            RatMatrix fresh(total - n0, total), base(n0, total);
            for (std::size_t i = 0; i < n0; ++i) base(i, i) = Rational(1);
            for (std::size_t i = n0; i < total; ++i) fresh(i - n0, i) = Rational(1);
            j["delta_new_over_base"] = delta(r.presentation, fresh, base, b_.budget);
            j["presentation"] = presentation_json(r.presentation);
            fields_.insert_or_assign(c.names[2], std::move(r.presentation));
        } catch (const ExtensionRejected& e) {
            Json err;
            err["condition"] = e.condition();
            if (e.freeness) err["certificate"] = certificate_json(*e.freeness);
            if (e.rotundity) err["certificate"] = rotundity_json(*e.rotundity);
            if (e.dimension) err["dimension"] = *e.dimension;
            throw CommandFailure(e.what(), err);
        }
        return j;
    }

    Json delta_cmd(const Command& c) const {
        const EFieldPresentation& F = field(c.names[0]);
        RatMatrix a = elements(F, c.tuple), base = elements(F, c.over);
        Json j;
        j["field"] = c.names[0];
        j["tuple"] = strings(c.tuple);
        j["over"] = strings(c.over);
        j["delta"] = delta(F, a, base, b_.budget);
        return j;
    }

    Json schanuel(const Command& c) const {
        const EFieldPresentation& F = field(c.names[0]);
        SchanuelVerdict v = schanuel_check(F, elements(F, c.tuple), b_.budget);
        Json j;
        j["field"] = c.names[0];
        j["tuple"] = strings(c.tuple);
        j["delta"] = v.delta;
        j["verdict"] = v.holds ? "holds" : "violated";
        return j;
    }

    Json strong(const Command& c) const {
        const EFieldPresentation& F = field(c.names[0]);
        Json j = strong_json(F, is_strong_up_to(F, elements(F, c.over), b_.strong, b_.budget));
        j["field"] = c.names[0];
        j["over"] = strings(c.over);
        return j;
    }

    Json hull(const Command& c) const {
        const EFieldPresentation& F = field(c.names[0]);
        HullResult h = hull_up_to(F, elements(F, c.tuple), b_.strong, b_.budget);
        Json j;
        j["field"] = c.names[0];
        j["generators"] = strings(c.tuple);
        j["bound"] = h.bound;
        j["span"] = strings(element_texts(F, h.span));
        Json trace = Json::array();
        for (const auto& w : h.trace) trace.push_back(strings(element_texts(F, w)));
        j["trace"] = trace;
        return j;
    }

    static Json formula_result(const std::string& axiom, const Formula& f) {
        Json j;
        j["axiom"] = axiom;
        j["text"] = render(f);
        j["ast"] = formula_json(f);
        return j;
    }

    Json seac(const Command& c) const {
        SeacInstance s = seac_axiom_instance(variety(c.names[0]), c.number);
        Json j = formula_result("seac", s.sentence);
        j["r"] = c.number;
        Json defs = Json::array();
        for (const auto& d : s.definitions) {
            Json dj;
            dj["predicate"] = d.name;
            dj["args"] = strings(d.args);
            dj["meaning"] = d.meaning;
            if (d.definition) dj["definition"] = render(*d.definition);
            defs.push_back(dj);
        }
        j["definitions"] = defs;
        return j;
    }

    Json isolating(const Command& c) const {
        const EFieldPresentation& F = field(c.names[0]);
        IsolatingInput in{elements(F, c.tuple), c.over, variety(c.names[1]), elements(F, c.witness), RatMatrix()};
        const std::size_t n = in.a.rows(), r = in.b.rows();
        in.m = RatMatrix(n, r);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::vector<Rational>> vs;
            for (std::size_t k = 0; k < r; ++k) vs.push_back(in.b.row(k));
            vs.push_back(in.a.row(j));
            auto deps = q_linear_dependencies(vs);
            if (deps.size() != 1 || deps[0][r].is_zero())
                throw DomainError("decomposition inconsistent: " + c.tuple[j] + " is not a unique combination of the witness");
            for (std::size_t k = 0; k < r; ++k) in.m(j, k) = -deps[0][k] / deps[0][r];
        }
        Json j = formula_result("isolating", isolating_formula(F, in, b_.budget));
        Json m = Json::array();
        for (std::size_t i = 0; i < n; ++i) {
            Json row = Json::array();
            for (std::size_t k = 0; k < r; ++k) row.push_back(in.m(i, k).to_string());
            m.push_back(row);
        }
        j["matrix"] = m;
        return j;
    }

    Json verify(const Command& c) const {
        const EFieldPresentation& F = field(c.names[1]);
        std::vector<std::vector<Rational>> point;
        for (const auto& t : c.tuple) point.push_back(F.parse_element(t));
        auto sys = khovanskii_system(system(c.names[0]));
        Json j;
        j["system"] = c.names[0];
        j["field"] = c.names[1];
        j["point"] = strings(c.tuple);
        j["verdict"] = to_string(verify_witness(sys, F, point, b_.budget));
        j["semantics"] = "generic-point";
        return j;
    }

    Json iterated(std::size_t n) const {
        IteratedConfig cfg = iterated_exp_config(n, b_.budget);
        Json j;
        j["n"] = n;
        j["presentation_basis"] = strings(cfg.presentation.basis());
        Json a = analyze(cfg.variety);
        for (auto it = a.begin(); it != a.end(); ++it) j[it.key()] = it.value();
        GVariety fixed = GVariety::parse(1, {"x1 - y1"}, {}, b_.budget);
        if (n == 0) j["equals_fixed_point_variety"] = cfg.variety.rename(fixed.ring(), b_.budget) == fixed;
        return j;
    }

    Json family(const Command& c) const {
        FamilyFilterResult r = family_filter(variety(c.names[0]), c.samples, b_);
        Json j;
        j["family"] = c.names[0];
        j["symbolic"] = member_json(r.symbolic);
        Json s = Json::array();
        for (const auto& m : r.samples) s.push_back(member_json(m));
        j["samples"] = s;
        return j;
    }

    Json isomorphic(const Command& c) const {
        const EFieldPresentation& F = field(c.names[0]);
        const GVariety &v1 = variety(c.names[1]), &v2 = variety(c.names[2]);
        auto syms = [](std::size_t n) {
            std::vector<std::string> s;
            for (std::size_t i = 1; i <= n; ++i) s.push_back("c" + std::to_string(i));
            return s;
        };
        IsomorphismResult r = extensions_isomorphic({F, v1, syms(v1.n())}, {F, v2, syms(v2.n())}, b_.m_max, b_.budget);
        Json j;
        j["field"] = c.names[0];
        j["varieties"] = strings({c.names[1], c.names[2]});
        j["isomorphic"] = r.isomorphic;
        j["m_max"] = r.m_max;
        if (r.m) j["m"] = Json::array({r.m->first, r.m->second});
        return j;
    }

    static Json khovanskii(const std::vector<ExpPoly>& fs) {
        KhovanskiiSystem sys = khovanskii_system(fs);
        std::vector<std::string> eqs;
        for (const auto& f : sys.equations()) eqs.push_back(f.to_string());
        Json j;
        j["width"] = sys.width();
        j["equations"] = strings(eqs);
        j["jacobian"] = sys.jacobian().to_string();
        j["chi"] = render(chi_formula(fs));
        return j;
    }

public:
    struct CommandFailure : std::runtime_error {
        CommandFailure(const std::string& what, Json detail) : std::runtime_error(what), detail(std::move(detail)) {}
        Json detail;
    };
};

const char* kind_name(Command::Kind k) {
    using K = Command::Kind;
    switch (k) {
        case K::Analyze: return "analyze";
        case K::Extend: return "extend";
        case K::Delta: return "delta";
        case K::Schanuel: return "schanuel";
        case K::Strong: return "strong";
        case K::Hull: return "hull";
        case K::EmitSchanuel:
        case K::EmitSeac:
        case K::EmitCcp:
        case K::EmitIsolating: return "emit-axiom";
        case K::VerifyWitness: return "verify-witness";
        case K::Iterated: return "iterated";
        case K::FamilyFilter: return "family-filter";
        case K::Isomorphic: return "isomorphic";
        case K::Khovanskii: return "khovanskii";
    }
    return "";
}

void text_value(std::ostringstream& out, const std::string& key, const Json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (v.is_object() && v.empty()) {
        out << pad << key << ": {}\n";
    } else if (v.is_object()) {
        out << pad << key << ":\n";
        for (auto it = v.begin(); it != v.end(); ++it) text_value(out, it.key(), it.value(), indent + 1);
    } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const Json& e) { return e.is_object(); })) {
        out << pad << key << ":\n";
        std::size_t i = 0;
        for (const auto& e : v) text_value(out, "[" + std::to_string(i++) + "]", e, indent + 1);
    } else if (v.is_string()) {
        out << pad << key << ": " << v.get<std::string>() << "\n";
    } else {
        out << pad << key << ": " << v.dump() << "\n";
    }
}

}  // namespace

Session parse_session(std::string_view text) { return SessionParser(text).parse(); }

RunResult run_session(const Session& session, const Bounds& bounds) {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    Runner runner(session, bounds);
    RunResult out;
    Json results = Json::array();
    Json timing = Json::array();
    for (const auto& c : session.commands) {
        const auto t = Clock::now();
        Json r;
        r["command"] = c.text;
        r["kind"] = kind_name(c.kind);
        r["line"] = c.line;
        try {
            Json body = runner.run(c);
            r["status"] = "ok";
            r["result"] = std::move(body);
        } catch (const Runner::CommandFailure& e) {
            r["status"] = "error";
            r["error"] = e.what();
            r["detail"] = e.detail;
            out.any_error = true;
        } catch (const std::exception& e) {
            r["status"] = "error";
            r["error"] = e.what();
            out.any_error = true;
        }
        results.push_back(std::move(r));
        timing.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t).count());
    }
    Json report;
    report["schema"] = 1;
    report["config"] = {{"bound_rotund", bounds.rotund},
                        {"bound_mult", bounds.mult},
                        {"bound_strong", bounds.strong},
                        {"m_max", bounds.m_max},
                        {"budget", bounds.budget}};
    report["results"] = std::move(results);
    report["status"] = out.any_error ? "error" : "ok";
    report["timing"] = {{"total_ms", std::chrono::duration<double, std::milli>(Clock::now() - t0).count()},
                        {"commands_ms", timing}};
    out.report = std::move(report);
    return out;
}

Json strip_timing(Json report) {
    report.erase("timing");
    return report;
}

std::string report_text(const Json& report) {
    std::ostringstream out;
    const Json& c = report.at("config");
    out << "bounds: rotund " << c.at("bound_rotund").dump() << ", mult " << c.at("bound_mult").dump() << ", strong "
        << c.at("bound_strong").dump() << ", m_max " << c.at("m_max").dump() << ", budget " << c.at("budget").dump()
        << "\n";
    for (const auto& r : report.at("results")) {
        out << "\n> " << r.at("command").get<std::string>() << "\n";
        if (r.at("status") == "ok") {
            for (auto it = r.at("result").begin(); it != r.at("result").end(); ++it) {
                if (it.key() == "ast") continue;
                text_value(out, it.key(), it.value(), 1);
            }
        } else {
            out << "  error: " << r.at("error").get<std::string>() << "\n";
            if (r.contains("detail"))
                for (auto it = r.at("detail").begin(); it != r.at("detail").end(); ++it)
                    text_value(out, it.key(), it.value(), 1);
        }
    }
    return out.str();
}

Json term_json(const Term& t) {
    using K = Term::Kind;
    static const char* names[] = {"num", "var", "add", "sub", "neg", "mul", "pow", "exp"};
    Json j;
    j["kind"] = names[static_cast<int>(t.kind)];
    switch (t.kind) {
        case K::Num: j["value"] = t.value.to_string(); break;
        case K::Var: j["name"] = t.name; break;
        case K::Pow:
            j["base"] = term_json(t.args[0]);
            j["exponent"] = t.exponent;
            break;
        default: {
            Json args = Json::array();
            for (const auto& a : t.args) args.push_back(term_json(a));
            j["args"] = args;
        }
    }
    return j;
}

Json formula_json(const Formula& f) {
    using K = Formula::Kind;
    static const char* names[] = {"true",   "false",  "eq",     "pred",        "not",       "and",      "or",
                                  "implies", "forall", "exists", "uncountably", "forall_in", "exists_in"};
    Json j;
    j["kind"] = names[static_cast<int>(f.kind)];
    switch (f.kind) {
        case K::True:
        case K::False: break;
        case K::Eq:
            j["lhs"] = term_json(f.terms[0]);
            j["rhs"] = term_json(f.terms[1]);
            break;
        case K::Pred: {
            j["name"] = f.name;
            Json args = Json::array();
            for (const auto& t : f.terms) args.push_back(term_json(t));
            j["args"] = args;
            break;
        }
        case K::Forall:
        case K::Exists:
        case K::Uncountably:
            j["vars"] = strings(f.vars);
            j["body"] = formula_json(f.subs[0]);
            break;
        case K::ForallIn:
        case K::ExistsIn:
            j["vars"] = strings(f.vars);
            j["domain"] = f.domain == Domain::Z ? "Z" : "Q";
            j["nonzero"] = f.nonzero;
            j["body"] = formula_json(f.subs[0]);
            break;
        default: {
            Json subs = Json::array();
            for (const auto& s : f.subs) subs.push_back(formula_json(s));
            j["args"] = subs;
        }
    }
    return j;
}

}  // namespace expfield
