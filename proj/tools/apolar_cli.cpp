// Command-line front door: moment ingestion, subcommand dispatch, and
// deterministic JSON/CSV emission. Exact values are printed as "p/q" strings;
// floats appear only in quadrature payloads. Exit codes: 0 success, 1 domain
// error, 2 usage error.

#include "apolar/selfcheck.hpp"
#include "apolar/serialize.hpp"
#include "apolar/symfun.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace apolar;

struct Output {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (text.empty() || text.back() != '\n') std::cout << "\n";
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
        out << text;
        if (text.empty() || text.back() != '\n') out << "\n";
    }
    void write(const Json& j) const { write(j.dump(2)); }
};

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    return Json::parse(in);
}

// A moments source is a builtin name ("hermite"), a product of builtin names
// ("hermite*uniform_pm1"), or a path to a moment JSON file.
MomentFunctional load_moments(const std::string& source, std::uint32_t up_to) {
    if (is_builtin_table_name(source)) return MomentFunctional::builtin(source, up_to);
    if (source.find('*') != std::string::npos) {
        std::vector<std::string> names;
        std::stringstream ss(source);
        std::string part;
        while (std::getline(ss, part, '*')) names.push_back(part);
        for (const auto& n : names)
            if (!is_builtin_table_name(n))
                throw std::invalid_argument("unknown builtin table '" + n + "' in product");
        return MomentFunctional::product(names, up_to);
    }
    return moments_from_json(read_json_file(source));
}

MultiIndex parse_multi_index(const std::string& s) { return multi_index_from_string(s); }

double tolerance_default() {
    if (const char* env = std::getenv("APOLAR_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("APOLAR_TOL is not a number");
        }
    }
    return kDefaultTol;
}

Json orthogonality_to_json(const OrthogonalityReport& report) {
    Json j{{"zero_through", report.zero_through}, {"all_zero", report.all_zero}};
    if (report.first_nonorthogonal) j["first_nonorthogonal_order"] = *report.first_nonorthogonal;
    if (!report.pairwise_zero.empty()) j["pairwise_zero"] = report.pairwise_zero;
    return j;
}

int run_ops(const std::string& moments_src, const std::vector<std::string>& aux_src,
            std::uint32_t n, std::uint32_t m, const std::string& path, bool monic,
            std::uint32_t table_to, std::uint32_t up_to, const std::string& format,
            const Output& out) {
    const std::uint32_t order = std::max(up_to, 2 * std::max(n, table_to) + 4);
    MomentFunctional M = load_moments(moments_src, order);
    for (std::size_t t = 0; t < aux_src.size(); ++t) {
        MomentFunctional aux = load_moments(aux_src[t], order);
        M.set_class_moments(static_cast<std::uint32_t>(2 + t), aux.class_table(1));
    }

    if (table_to > 0) {
        std::vector<GopsEntry> entries;
        for (std::uint32_t nn = 1; nn <= table_to; ++nn) {
            GopsEntry e = gops_det(M, nn, 1);
            entries.push_back(monic ? monicize(std::move(e)) : e);
        }
        if (format == "csv") {
            out.write(emit_table_csv(entries));
        } else {
            Json j = Json::array();
            for (const auto& e : entries) j.push_back(gops_entry_to_json(e));
            out.write(j);
        }
        return 0;
    }

    Json result;
    std::optional<GopsEntry> det_entry, sym_entry;
    if (path == "det" || path == "both") det_entry = gops_det(M, n, m);
    if (path == "sym" || path == "both") sym_entry = gops_symbolic(M, n, m);
    if (monic) {
        if (det_entry) det_entry = monicize(std::move(*det_entry));
        if (sym_entry) sym_entry = monicize(std::move(*sym_entry));
    }
    if (det_entry) result["det"] = gops_entry_to_json(*det_entry);
    if (sym_entry) result["sym"] = gops_entry_to_json(*sym_entry);
    if (det_entry && sym_entry && !monic) {
        const Rational factor{factorial(n - m + 1)};
        result["scaling_factor"] = rational_to_string(factor);
        result["scaling_confirmed"] = sym_entry->poly == det_entry->poly * factor;
    }
    const GopsEntry& main = det_entry ? *det_entry : *sym_entry;
    result["orthogonality"] = orthogonality_to_json(check_orthogonality(M, main));
    result["leading"] = rational_to_string(leading_coefficient(M, n, m));
    out.write(result);
    return 0;
}

int run_covariant(const std::string& form_src, const std::vector<std::string>& aux_src,
                  std::uint32_t m, const std::string& path, std::optional<std::uint32_t> transvect,
                  const std::string& g_src, bool want_hessian, const Output& out) {
    const BinaryForm f = form_from_json(read_json_file(form_src));
    Json result;
    if (want_hessian) {
        result["hessian"] = poly_to_json(hessian(f));
        result["text"] = hessian(f).to_string();
        out.write(result);
        return 0;
    }
    if (transvect) {
        if (g_src.empty()) throw std::invalid_argument("--transvectant needs --g <form.json>");
        const BinaryForm g = form_from_json(read_json_file(g_src));
        const Poly t = transvectant(f, g, *transvect);
        result["transvectant"] = poly_to_json(t);
        result["order"] = *transvect;
        result["text"] = t.to_string();
        out.write(result);
        return 0;
    }
    std::vector<BinaryForm> aux;
    for (const auto& src : aux_src) aux.push_back(form_from_json(read_json_file(src)));
    std::optional<Poly> sym, det_path;
    if (path == "sym" || path == "both") sym = covariant_J(f, aux, m);
    if (path == "det" || path == "both") det_path = covariant_J_det(f, aux, m);
    if (sym) result["sym"] = poly_to_json(*sym);
    if (det_path) result["det"] = poly_to_json(*det_path);
    if (sym && det_path) result["paths_equal"] = *sym == *det_path;
    result["index_w"] = covariant_index(f.degree, m);
    const Poly& value = sym ? *sym : *det_path;
    result["text"] = value.to_string();
    if (!value.is_zero()) {
        const BinaryForm g = poly_to_form(value, m);
        result["apolar_to_input"] = apolar_pairing(f, g).is_zero();
    }
    out.write(result);
    return 0;
}

int run_quad(const std::string& moments_src, std::uint32_t n, bool check_exactness,
             const std::string& discriminant, std::uint32_t up_to, double tol, const Output& out) {
    const std::uint32_t order = std::max(up_to, 4 * n + 2);
    const MomentFunctional M = load_moments(moments_src, order);
    const QuadratureRule rule = gauss_rule(M, n, tol);
    Json result = rule_to_json(rule);
    if (check_exactness) {
        Json residuals = Json::object();
        double max_residual = 0;
        for (std::uint32_t k = 0; k + 1 <= 2 * n; ++k) {
            const double r =
                std::abs(rational_to_double(rule_power_sum(rule, k) - M.moment1(1, k)));
            residuals[std::to_string(k)] = r;
            max_residual = std::max(max_residual, r);
        }
        result["residuals"] = residuals;
        result["max_residual"] = max_residual;
        bool ok = true;
        for (std::uint32_t k = 0; k + 1 <= 2 * n; ++k) {
            const double scale =
                std::max(1.0, std::abs(rational_to_double(M.moment1(1, k))));
            if (residuals[std::to_string(k)].get<double>() > tol * scale) ok = false;
        }
        result["exact_through_2n_minus_1"] = ok;
    }
    if (!discriminant.empty()) {
        const MultiIndex nk = parse_multi_index(discriminant);
        if (nk.size() != 2) throw std::invalid_argument("--discriminant expects N,k");
        const auto dm = discriminant_moment(M, nk[0], nk[1], n, tol);
        Json dj{{"N", nk[0]},
                {"k", nk[1]},
                {"exact", rational_to_string(dm.exact)},
                {"quadrature", dm.quadrature},
                {"agrees", dm.agrees}};
        if (dm.product_form) dj["product_form"] = *dm.product_form;
        result["discriminant"] = dj;
    }
    out.write(result);
    return 0;
}

int run_symfun(const std::string& alpha_str, std::uint32_t k, std::uint32_t N, bool verify,
               bool tilde, const std::string& moments_src, std::uint32_t n, double tol,
               const Output& out) {
    Composition alpha;
    if (!alpha_str.empty())
        for (auto part : parse_multi_index(alpha_str)) alpha.parts.push_back(part);
    if (N == 0) N = static_cast<std::uint32_t>(alpha.parts.size());
    if (alpha.parts.size() != N)
        throw std::invalid_argument("--alpha must list exactly N parts");

    Json result;
    if (verify) {
        const auto report = verify_schur_monomial_identities(alpha, k, N);
        result["identity"] = report.identity;
        result["holds"] = report.holds;
        result["residual"] = poly_to_json(report.lhs - report.rhs);
        out.write(result);
        return report.holds ? 0 : 1;
    }
    if (tilde) {
        if (moments_src.empty()) throw std::invalid_argument("--tilde needs --moments and --n");
        const MomentFunctional M = load_moments(moments_src, 2 * n + 4);
        const auto report = schur_average_tilde(M, n, alpha, tol);
        result["nodes"] = report.nodes;
        result["value"] = report.value;
        result["schur_rising"] = report.schur_rising;
        result["schur_classic"] = report.schur_classic;
        result["rising_over_nfact"] = report.rising_over_nfact;
        result["rising_times_Nfact"] = report.rising_times_Nfact;
        result["matched"] = report.matched;
        out.write(result);
        return 0;
    }
    std::vector<VarId> vars;
    for (std::uint32_t b = 1; b <= N; ++b) vars.push_back(xvar(b));
    const Poly s = s_alpha_k(alpha, k, vars);
    result["s_alpha_k"] = poly_to_json(s);
    result["stab_order"] = stab_order(alpha).str();
    result["text"] = s.to_string();
    out.write(result);
    return 0;
}

int run_mops(const std::string& moments_src, const std::string& n_str, const std::string& m_str,
             bool full, bool seeded_aux, std::uint32_t up_to, const Output& out) {
    const MultiDegree n{parse_multi_index(n_str)};
    std::uint32_t max_comp = 0;
    for (auto c : n.comps) max_comp = std::max(max_comp, c);
    const std::uint32_t order = std::max(up_to, 2 * max_comp + 2);
    const MomentFunctional M = load_moments(moments_src, order);
    if (M.dimension() + 1 != n.comps.size())
        throw std::invalid_argument("--n must have d+1 components");

    MultiGops entry{n, n, Poly{}, {}};
    std::vector<MultiIndex> orth_orders;
    if (full) {
        entry = multi_ops_full(M, n);
        const auto box = box_enumerate(n).order;
        orth_orders.assign(box.begin(), box.end() - 1);
    } else {
        if (m_str.empty()) throw std::invalid_argument("mops needs --m or --full");
        const MultiDegree m{parse_multi_index(m_str)};
        entry = seeded_aux ? multi_gops_det(M, n, m, AuxRowSource::seeded_random)
                           : multi_gops_det(M, n, m, AuxRowSource::moment_classes);
        orth_orders = box_enumerate(comp_sub(n, m)).order;
    }
    Json result{{"n", n.comps},
                {"poly", poly_to_json(entry.poly)},
                {"text", entry.poly.to_string()}};
    if (!entry.warning.empty()) result["warning"] = entry.warning;
    Json orth = Json::object();
    bool all_zero = true;
    for (const auto& kidx : orth_orders) {
        Poly xk;
        xk.add_term(block_monomial(0, kidx, MultiIndex(kidx.size(), 0)), Rational(1));
        const bool zero = expectation_multi_x0(M, entry.poly * xk) == 0;
        orth[multi_index_to_string(kidx)] = zero;
        all_zero = all_zero && zero;
    }
    result["orthogonality"] = orth;
    result["all_orthogonal"] = all_zero;
    out.write(result);
    return entry.warning.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact orthogonal polynomials, covariants of binary forms, and Gauss quadrature"};
    app.require_subcommand(1);
    app.fallthrough();  // --output/--tol/--format may follow the subcommand

    Output output;
    double tol = 0;  // resolved after parsing so the env default can throw cleanly
    std::string format = "json";
    app.add_option("--output", output.path, "write to a file instead of stdout");
    app.add_option("--tol", tol, "float tolerance for quadrature paths (default 1e-9, env APOLAR_TOL)");
    app.add_option("--format", format, "json or csv (csv for tables only)")
        ->check(CLI::IsMember({"json", "csv"}));

    // ops
    auto* ops_cmd = app.add_subcommand("ops", "orthogonal polynomial entries from moments");
    std::string ops_moments;
    std::vector<std::string> ops_aux;
    std::uint32_t ops_n = 0, ops_m = 1, ops_table = 0, ops_up_to = 0;
    std::string ops_path = "both";
    bool ops_monic = false;
    ops_cmd->add_option("--moments", ops_moments, "builtin name or moment JSON file")->required();
    ops_cmd->add_option("--aux-moments", ops_aux, "auxiliary class tables (classes 2, 3, ...)");
    ops_cmd->add_option("--n", ops_n, "degree");
    ops_cmd->add_option("--m", ops_m, "orthogonality defect, 1 = classical");
    ops_cmd->add_option("--path", ops_path, "det, sym, or both")
        ->check(CLI::IsMember({"det", "sym", "both"}));
    ops_cmd->add_flag("--monic", ops_monic, "divide by the leading coefficient");
    ops_cmd->add_option("--table", ops_table, "emit the classical table for n = 1..N");
    ops_cmd->add_option("--up-to", ops_up_to, "builtin moment generation order");

    // covariant
    auto* cov_cmd = app.add_subcommand("covariant", "joint covariants and transvectants");
    std::string cov_form, cov_g;
    std::vector<std::string> cov_aux;
    std::uint32_t cov_m = 1;
    std::string cov_path = "both";
    std::optional<std::uint32_t> cov_transvectant;
    bool cov_hessian = false;
    cov_cmd->add_option("--form", cov_form, "source form JSON file")->required();
    cov_cmd->add_option("--aux", cov_aux, "auxiliary degree-m form files");
    cov_cmd->add_option("--m", cov_m, "target degree");
    cov_cmd->add_option("--path", cov_path, "det, sym, or both")
        ->check(CLI::IsMember({"det", "sym", "both"}));
    cov_cmd->add_option("--transvectant", cov_transvectant, "compute the k-th transvectant with --g");
    cov_cmd->add_option("--g", cov_g, "second form for --transvectant");
    cov_cmd->add_flag("--hessian", cov_hessian, "compute the Hessian of --form");

    // quad
    auto* quad_cmd = app.add_subcommand("quad", "Gauss quadrature from moment determinants");
    std::string quad_moments, quad_disc;
    std::uint32_t quad_n = 0, quad_up_to = 0;
    bool quad_exact = false;
    quad_cmd->add_option("--moments", quad_moments, "builtin name or moment JSON file")->required();
    quad_cmd->add_option("--n", quad_n, "node count")->required();
    quad_cmd->add_flag("--check-exactness", quad_exact, "report residuals for k = 0..2n-1");
    quad_cmd->add_option("--discriminant", quad_disc, "N,k: discriminant moment identity");
    quad_cmd->add_option("--up-to", quad_up_to, "builtin moment generation order");

    // symfun
    auto* sym_cmd = app.add_subcommand("symfun", "symmetrized covariant family and its identities");
    std::string sym_alpha, sym_moments;
    std::uint32_t sym_k = 0, sym_N = 0, sym_n = 0;
    bool sym_verify = false, sym_tilde = false;
    sym_cmd->add_option("--alpha", sym_alpha, "weakly decreasing parts, e.g. 2,1,0")->required();
    sym_cmd->add_option("--k", sym_k, "discriminant power");
    sym_cmd->add_option("--N", sym_N, "number of variables (defaults to |alpha|)");
    sym_cmd->add_flag("--verify", sym_verify, "check the monomial/Schur reduction");
    sym_cmd->add_flag("--tilde", sym_tilde, "root-average report (needs --moments, --n)");
    sym_cmd->add_option("--moments", sym_moments, "moment source for --tilde");
    sym_cmd->add_option("--n", sym_n, "rule size for --tilde");

    // mops
    auto* mops_cmd = app.add_subcommand("mops", "multivariate orthogonal polynomials");
    std::string mops_moments, mops_n, mops_m;
    std::uint32_t mops_d = 0, mops_up_to = 0;
    bool mops_full = false, mops_seeded = false;
    mops_cmd->add_option("--moments", mops_moments,
                         "product like hermite*hermite, or moment JSON file")
        ->required();
    mops_cmd->add_option("--d", mops_d, "dimension parameter (informational; the moments fix it)");
    mops_cmd->add_option("--n", mops_n, "multi-degree, e.g. 2,1")->required();
    mops_cmd->add_option("--m", mops_m, "orthogonality defect multi-degree");
    mops_cmd->add_flag("--full", mops_full, "full system: orthogonal to everything below n");
    mops_cmd->add_flag("--seeded-aux", mops_seeded, "deterministic pseudo-random auxiliary rows");
    mops_cmd->add_option("--up-to", mops_up_to, "builtin moment generation order");

    auto* self_cmd = app.add_subcommand("selfcheck", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (tol == 0) tol = tolerance_default();
        if (ops_cmd->parsed())
            return run_ops(ops_moments, ops_aux, ops_n, ops_m, ops_path, ops_monic, ops_table,
                           ops_up_to, format, output);
        if (cov_cmd->parsed())
            return run_covariant(cov_form, cov_aux, cov_m, cov_path, cov_transvectant, cov_g,
                                 cov_hessian, output);
        if (quad_cmd->parsed())
            return run_quad(quad_moments, quad_n, quad_exact, quad_disc, quad_up_to, tol, output);
        if (sym_cmd->parsed())
            return run_symfun(sym_alpha, sym_k, sym_N, sym_verify, sym_tilde, sym_moments, sym_n,
                              tol, output);
        if (mops_cmd->parsed())
            return run_mops(mops_moments, mops_n, mops_m, mops_full, mops_seeded, mops_up_to,
                            output);
        if (self_cmd->parsed()) {
            std::ostringstream report;
            const int status = apolar::print_acceptance_report(apolar::run_acceptance(tol), report);
            output.write(report.str());
            return status;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
