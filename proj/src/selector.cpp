#include "permseq/selector.hpp"

#include "permseq/errors.hpp"
#include "permseq/json_io.hpp"
#include "permseq/prime_composite.hpp"

#include <cctype>
#include <fstream>
#include <vector>

namespace permseq {

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    bool done() const { return pos_ == s_.size(); }
    std::size_t pos() const { return pos_; }
    std::string_view rest() const { return s_.substr(pos_); }

    bool eat(std::string_view token) {
        if (s_.substr(pos_, token.size()) != token) return false;
        pos_ += token.size();
        return true;
    }
    void expect(std::string_view token) {
        if (!eat(token)) throw ParseError("expected '" + std::string(token) + "'", pos_);
    }
    std::uint64_t number() {
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            const unsigned digit = static_cast<unsigned>(s_[pos_] - '0');
            if (v > (UINT64_MAX - digit) / 10) throw ParseError("number too large", start);
            v = v * 10 + digit;
            ++pos_;
        }
        if (pos_ == start) throw ParseError("expected a non-negative integer", start);
        return v;
    }
    std::vector<std::uint64_t> numbers(std::size_t n) {
        std::vector<std::uint64_t> out;
        for (std::size_t i = 0; i < n; ++i) {
            if (i) expect(",");
            out.push_back(number());
        }
        return out;
    }
    void finish() {
        if (!done()) throw ParseError("unexpected trailing input", pos_);
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

PermSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 5);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what(), 5);
    }
    return perm_spec_from_json(j);
}

void finish_residue(Selection& sel, PermSpec spec, bool inverse, bool compile) {
    if (inverse) spec = permseq::inverse(spec);
    sel.params = spec.params;
    if (compile) sel.map = std::make_shared<ResidueMap>(spec);
    sel.spec = std::move(spec);
}

}  // namespace

Selection parse_selector(std::string_view text, bool inverse, bool compile) {
    Selection sel;
    sel.text = std::string(text);
    sel.inverted = inverse;
    Cursor cur(text);

    if (cur.eat("pabcd:")) {
        const auto v = cur.numbers(4);
        const PabcdParams p{v[0], v[1], v[2], v[3]};
        PermSpec spec;
        if (cur.eat("/simple:")) {
            sel.mode = GeneralizationMode::simple;
        } else if (cur.eat("/ext:")) {
            sel.mode = GeneralizationMode::extended;
        } else if (!cur.done()) {
            throw ParseError("expected '/simple:' or '/ext:'", cur.pos());
        }
        if (sel.mode) {
            const std::uint64_t rank = cur.number();
            cur.finish();
            spec = make_generalization(p, *sel.mode, rank);
        } else {
            spec = make_pabcd(p.a, p.b, p.c, p.d);
        }
        finish_residue(sel, std::move(spec), inverse, compile);
        return sel;
    }
    if (cur.eat("fafc:")) {
        const auto v = cur.numbers(6);
        cur.finish();
        finish_residue(sel, make_fafc(v[0], v[1], v[2], v[3], v[4], v[5]), inverse, compile);
        return sel;
    }
    if (cur.eat("primecomp")) {
        cur.finish();
        std::shared_ptr<const Mapping> pc = prime_composite_perm();
        sel.map = inverse ? std::make_shared<InverseMapping>(pc) : pc;
        return sel;
    }
    if (cur.eat("file:")) {
        if (cur.done()) throw ParseError("expected a file path", cur.pos());
        finish_residue(sel, load_spec_file(std::string(cur.rest())), inverse, compile);
        return sel;
    }
    throw ParseError("unknown selector; expected pabcd:, fafc:, primecomp or file:", 0);
}

std::optional<std::uint64_t> default_m_floor(const Selection& sel) {
    if (!sel.params) return std::nullopt;
    if (sel.mode) return 20;
    const PabcdParams& p = *sel.params;
    if (p == PabcdParams{1, 3, 2, 2} || p == PabcdParams{2, 2, 1, 3}) return 10;
    if (p == PabcdParams{2, 4, 3, 3} || p == PabcdParams{3, 3, 2, 4}) return 20;
    return std::nullopt;
}

}  // namespace permseq
