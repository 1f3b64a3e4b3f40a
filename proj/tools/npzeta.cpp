#include "npzeta/curve_file.hpp"
#include "npzeta/errors.hpp"
#include "npzeta/oracle.hpp"
#include "npzeta/polytope.hpp"
#include "npzeta/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <climits>
#include <iostream>

using json = nlohmann::json;
using namespace npz;

namespace {

json big(const mpz_class& v)
{
    if (v.fits_slong_p())
        return v.get_si();
    return v.get_str();
}

json big_list(const std::vector<mpz_class>& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(big(x));
    return a;
}

std::string poly_string(const std::vector<mpz_class>& c)
{
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0)
            continue;
        std::string coef = mpz_class(abs(c[i])).get_str();
        if (!s.empty())
            s += c[i] < 0 ? " - " : " + ";
        else if (c[i] < 0)
            s += "-";
        if (i == 0 || abs(c[i]) != 1)
            s += coef;
        if (i > 0)
            s += i == 1 ? "t" : "t^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

json zeta_json(const ZetaResult& Z, int kmax)
{
    json j;
    j["p"] = Z.field.p;
    j["n"] = Z.field.n;
    j["q"] = big(Z.q);
    j["chi"] = big_list(Z.chi);
    j["P"] = big_list(Z.P);
    j["genus"] = Z.genus;
    j["boundary_points"] = Z.boundary_points;
    j["volume_x2"] = Z.volume_x2;
    j["precision_N"] = Z.N;
    json pc = json::array();
    const auto counts = Z.counts(kmax);
    for (size_t k = 0; k < counts.size(); ++k)
        pc.push_back(json::array({k + 1, big(counts[k])}));
    j["point_counts"] = pc;
    j["timings_ms"] = Z.timings_ms;
    return j;
}

void print_zeta(const ZetaResult& Z, int kmax)
{
    std::cout << "field      F_" << Z.q << " (p = " << Z.field.p << ", n = " << Z.field.n << ")\n"
              << "genus      " << Z.genus << ", boundary points " << Z.boundary_points << "\n"
              << "precision  N = " << Z.N << ", eps = " << Z.eps << "\n"
              << "chi(t)     " << poly_string(Z.chi) << "\n"
              << "P(t)       " << poly_string(Z.P) << "\n"
              << "Z(t)       P(t) / (1 - " << Z.q << "t)\n";
    const auto counts = Z.counts(kmax);
    for (size_t k = 0; k < counts.size(); ++k)
        std::cout << "N_" << k + 1 << "        " << counts[k] << "\n";
    for (const auto& [stage, ms] : Z.timings_ms)
        std::cout << "time " << stage << ": " << ms << " ms\n";
}

int run_info(const std::string& path, bool as_json)
{
    const Curve c = parse_curve_file(path);
    const FieldSpec& s = c.field->spec();
    const NewtonPolytope P0 = NewtonPolytope::from_support(c.f.support());
    if (P0.genus() < 1)
        throw Error(ErrorKind::GenusZero, "Newton polygon has no interior lattice point", "polytope");
    const UnimodularMap map = normalize(P0);
    const NewtonPolytope P = NewtonPolytope::from_support(c.f.apply_unimodular(map).support());
    const PolytopeConstants K = constants(P);
    const PrecisionPlan plan = determine_precision(P, K, s.p, s.n);
    if (as_json) {
        json j;
        j["p"] = s.p;
        j["n"] = s.n;
        json verts = json::array();
        for (const auto& v : P0.vertices())
            verts.push_back(json::array({v.i, v.j}));
        j["vertices"] = verts;
        j["genus"] = P.genus();
        j["boundary_points"] = P.boundary_count();
        j["volume_x2"] = P.volume_x2();
        j["chi"] = json::array({K.chi1, K.chi2});
        j["kappa"] = json::array({K.kappa1, K.kappa2});
        j["M"] = K.M;
        j["Delta"] = K.Delta;
        j["precision_N"] = plan.N;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "field            p = " << s.p << ", n = " << s.n << "\nvertices        ";
    for (const auto& v : P0.vertices())
        std::cout << " " << to_string(v);
    std::cout << "\ngenus            " << P.genus() << "\nboundary points  " << P.boundary_count()
              << "\nvolume           " << P.volume_x2() / 2 << (P.volume_x2() % 2 ? ".5" : "")
              << "\nchi              [" << K.chi1 << ", " << K.chi2 << "]"
              << "\nkappa            [" << K.kappa1 << ", " << K.kappa2 << "]"
              << "\nM                " << K.M << "\nDelta            " << K.Delta
              << "\nplanned N        " << plan.N << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Zeta functions of curves nondegenerate with respect to their Newton polygon"};
    app.require_subcommand(1);

    std::string path;
    bool as_json = false;
    int kmax = 6;
    int precision_override = 0;
    int threads = 1;
    std::uint64_t seed = 1;

    auto* info = app.add_subcommand("info", "polygon data and the planned precision");
    info->add_option("curve", path, "curve file")->required();
    info->add_flag("--json", as_json, "machine-readable output");

    auto* zeta = app.add_subcommand("zeta", "compute the zeta function");
    zeta->add_option("curve", path, "curve file")->required();
    zeta->add_flag("--json", as_json, "machine-readable output");
    zeta->add_option("--kmax", kmax, "number of point counts to list")->check(CLI::Range(1, 64));
    zeta->add_option("--precision-override", precision_override, "use this working precision")
        ->check(CLI::PositiveNumber);
    zeta->add_option("--threads", threads, "worker threads for the Frobenius matrix")->check(CLI::Range(1, 256));

    auto* ver = app.add_subcommand("verify", "compare point counts with brute force");
    ver->add_option("curve", path, "curve file")->required();
    ver->add_flag("--json", as_json, "machine-readable output");
    ver->add_option("--kmax", kmax, "largest extension degree to check")->check(CLI::Range(1, 64));
    ver->add_option("--precision-override", precision_override, "use this working precision")
        ->check(CLI::PositiveNumber);
    ver->add_option("--threads", threads, "worker threads for the Frobenius matrix")->check(CLI::Range(1, 256));
    ver->add_option("--seed", seed, "seed for the root finding in the brute-force count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (info->parsed())
            return run_info(path, as_json);

        const Curve c = parse_curve_file(path);
        ZetaOptions opt;
        opt.precision_override = precision_override;
        opt.threads = threads;
        if (precision_override > 0)
            std::cerr << "warning: working precision forced to " << precision_override
                      << "; the result may be wrong\n";

        if (zeta->parsed()) {
            const ZetaResult Z = compute_zeta(c.f, opt);
            if (as_json)
                std::cout << zeta_json(Z, kmax).dump(2) << "\n";
            else
                print_zeta(Z, kmax);
            return 0;
        }

        if (ver->get_option("--kmax")->count() == 0)
            kmax = 4;
        const CountReport rep = verify(c.f, kmax, opt, seed);
        if (as_json) {
            json j = zeta_json(rep.zeta, kmax);
            json rows = json::array();
            for (const auto& r : rep.rows)
                rows.push_back({{"k", r.k}, {"oracle", big(r.oracle)}, {"zeta", big(r.zeta)}, {"match", r.match}});
            j["verification"] = rows;
            j["all_match"] = rep.all_match();
            std::cout << j.dump(2) << "\n";
        } else {
            print_zeta(rep.zeta, kmax);
            for (const auto& r : rep.rows)
                std::cout << "k = " << r.k << "  zeta " << r.zeta << "  brute force " << r.oracle << "  "
                          << (r.match ? "match" : "MISMATCH") << "\n";
            std::cout << (rep.all_match() ? "all counts match\n" : "counts differ\n");
        }
        return rep.all_match() ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
