#include "npzeta/curve_file.hpp"

#include "npzeta/errors.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace npz {

namespace {

[[noreturn]] void parse_error(int line, const std::string& msg)
{
    fail(ErrorKind::ParseError, line > 0 ? "line " + std::to_string(line) + ": " + msg : msg);
}

long parse_int(const std::string& tok, int line)
{
    long v = 0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    if (!tok.empty() && tok[0] == '+')
        ++b;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e)
        parse_error(line, "expected an integer, found '" + tok + "'");
    return v;
}

u64 residue(long v, u64 p)
{
    long r = v % static_cast<long>(p);
    return static_cast<u64>(r < 0 ? r + static_cast<long>(p) : r);
}

struct Directive {
    int line;
    std::vector<std::string> words;
};

}  // namespace

Curve parse_curve(std::istream& in)
{
    std::vector<Directive> dirs;
    std::string text;
    int line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (auto hash = text.find('#'); hash != std::string::npos)
            text.erase(hash);
        std::istringstream ss(text);
        Directive d{line, {}};
        for (std::string w; ss >> w;)
            d.words.push_back(w);
        if (!d.words.empty())
            dirs.push_back(std::move(d));
    }

    std::optional<u64> p;
    std::optional<int> n;
    const Directive* modulus = nullptr;
    std::vector<const Directive*> terms;
    for (const auto& d : dirs) {
        const std::string& key = d.words[0];
        if (key == "p" || key == "n") {
            if (d.words.size() != 2)
                parse_error(d.line, "'" + key + "' takes one value");
            if ((key == "p" && p) || (key == "n" && n))
                parse_error(d.line, "'" + key + "' given twice");
            const long v = parse_int(d.words[1], d.line);
            if (key == "p") {
                if (v < 2 || !is_prime(static_cast<u64>(v)))
                    parse_error(d.line, "p not prime");
                if (v >= (1L << 31))
                    parse_error(d.line, "p too large");
                p = static_cast<u64>(v);
            } else {
                if (v < 1 || v > 64)
                    parse_error(d.line, "n must be between 1 and 64");
                n = static_cast<int>(v);
            }
        } else if (key == "modulus") {
            if (modulus)
                parse_error(d.line, "'modulus' given twice");
            modulus = &d;
        } else if (key == "term") {
            terms.push_back(&d);
        } else {
            parse_error(d.line, "unknown directive '" + key + "'");
        }
    }
    if (!p)
        parse_error(0, "missing 'p' line");
    const int deg = n.value_or(1);

    FieldSpec spec;
    if (modulus) {
        const auto& w = modulus->words;
        const size_t k = w.size() - 1;
        if (k != static_cast<size_t>(deg) && k != static_cast<size_t>(deg) + 1)
            parse_error(modulus->line, "modulus needs " + std::to_string(deg) + " coefficients");
        std::vector<u64> r;
        for (size_t i = 1; i < w.size(); ++i)
            r.push_back(residue(parse_int(w[i], modulus->line), *p));
        if (r.size() == static_cast<size_t>(deg))
            r.push_back(1);
        else if (r.back() != 1)
            parse_error(modulus->line, "modulus must be monic");
        if (!is_irreducible(*p, r))
            parse_error(modulus->line, "modulus not irreducible");
        spec = FieldSpec{*p, deg, r};
    } else {
        spec = make_field(*p, deg);
    }

    Curve c;
    auto F = std::make_shared<Fq>(spec);
    c.field = F;
    c.f = Laurent<Fq>(*F);
    std::set<LatticePoint> seen;
    for (const Directive* d : terms) {
        const auto& w = d->words;
        if (w.size() != static_cast<size_t>(3 + deg))
            parse_error(d->line, "term needs i, j and " + std::to_string(deg) + " coefficients");
        const LatticePoint e{parse_int(w[1], d->line), parse_int(w[2], d->line)};
        if (!seen.insert(e).second)
            fail(ErrorKind::DuplicateTerm,
                 "line " + std::to_string(d->line) + ": exponent (" + w[1] + ", " + w[2] + ") repeated");
        Fq::Elem v(static_cast<size_t>(deg));
        for (int t = 0; t < deg; ++t)
            v[static_cast<size_t>(t)] = residue(parse_int(w[static_cast<size_t>(3 + t)], d->line), *p);
        c.f.set(e, v);
    }
    return c;
}

Curve parse_curve_string(const std::string& text)
{
    std::istringstream in(text);
    return parse_curve(in);
}

Curve parse_curve_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::ParseError, "cannot open " + path);
    return parse_curve(in);
}

std::string emit_curve(const Curve& c)
{
    const FieldSpec& s = c.field->spec();
    std::ostringstream out;
    out << "p " << s.p << "\nn " << s.n << "\nmodulus";
    for (u64 r : s.rbar)
        out << ' ' << r;
    out << '\n';
    for (const auto& [e, v] : c.f.terms()) {
        out << "term " << e.i << ' ' << e.j;
        for (u64 t : v)
            out << ' ' << t;
        out << '\n';
    }
    return out.str();
}

}  // namespace npz
