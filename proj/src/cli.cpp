#include "permutadkit/cli.hpp"

#include "permutadkit/bar_construction.hpp"
#include "permutadkit/homotopy_relations.hpp"
#include "permutadkit/per_operads.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace permutadkit {

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_usage = 2;

void emit(const std::string& text, const std::string& out_file, std::ostream& out) {
    if (out_file.empty()) {
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
    } else {
        std::ofstream f(out_file);
        if (!f) throw std::runtime_error("cannot open output file " + out_file);
        f << text;
    }
}

json betti_json(const std::map<int, int>& betti) {
    json j = json::object();
    for (const auto& [d, v] : betti) j[std::to_string(d)] = v;
    return j;
}

int cmd_enumerate(int n, int k, bool as_json, const std::string& out_file, std::ostream& out) {
    auto all = all_surjections(n, k);
    if (as_json) {
        json rows = json::array();
        for (const auto& r : all)
            rows.push_back({{"images", r.images()},
                            {"partition", partition_str(partition_of_surjection(r))},
                            {"sign", shuffle_sign(r)},
                            {"block_sizes", block_sizes(r)}});
        json j{{"command", "enumerate"},
               {"parameters", {{"n", n}, {"k", k}}},
               {"count", all.size()},
               {"rows", rows}};
        emit(j.dump(2), out_file, out);
    } else {
        std::ostringstream os;
        os << "surjections " << n << " ->> " << k << " (" << all.size() << ")\n";
        for (const auto& r : all)
            os << "  " << r.str() << "   " << partition_str(partition_of_surjection(r))
               << "   sign " << (shuffle_sign(r) > 0 ? "+1" : "-1") << '\n';
        emit(os.str(), out_file, out);
    }
    return exit_ok;
}

QuadraticPresentation load_presentation(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("target", "cannot read presentation file " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return presentation_from_json(buf.str());
}

json koszul_report_json(const KoszulReport& rep) {
    json per_arity = json::array();
    for (const auto& item : rep.per_arity)
        per_arity.push_back({{"n", item.n},
                             {"dims", item.dims},
                             {"betti", betti_json(item.betti)},
                             {"d_squared_zero", item.d_squared_zero},
                             {"h0_expected", item.h0_expected},
                             {"ok", item.ok}});
    return json{{"command", "koszul"},
                {"target", rep.target},
                {"nmax", rep.nmax},
                {"per_arity", per_arity},
                {"verdict", rep.koszul ? "koszul" : "not-koszul"}};
}

json per_koszul_report_json(const PerKoszulReport& rep) {
    json per_object = json::array();
    for (const auto& item : rep.per_object)
        per_object.push_back({{"alpha", item.alpha.images()},
                              {"dims", item.dims},
                              {"betti", betti_json(item.betti)},
                              {"d_squared_zero", item.d_squared_zero},
                              {"h0_expected", item.h0_expected},
                              {"ok", item.ok}});
    return json{{"command", "koszul"},
                {"target", rep.target},
                {"nmax", rep.max_card},
                {"per_object", per_object},
                {"verdict", rep.koszul ? "koszul" : "not-koszul"}};
}

int cmd_koszul(const std::string& target, int nmax, bool unsafe, bool as_json,
               const std::string& out_file, std::ostream& out) {
    bool peroperad = target == "oneper" || target == "antiassoc";
    int cap = peroperad ? 6 : 7;
    if (nmax < 1) throw CLI::ValidationError("--nmax", "must be at least 1");
    if (nmax > cap && !unsafe)
        throw CLI::ValidationError("--nmax", "capped at " + std::to_string(cap) +
                                                 " for this target (override with --unsafe)");

    bool koszul = false;
    json report;
    std::ostringstream table;
    if (peroperad) {
        auto pres = target == "oneper" ? one_per_presentation() : anti_associative_presentation();
        pres.truncation = std::max(pres.truncation, nmax + 2);
        auto rep = koszulity_check_peroperad(pres, nmax, target);
        koszul = rep.koszul;
        report = per_koszul_report_json(rep);
        table << "target " << target << ", objects of cardinality <= " << nmax << "\n";
        for (const auto& item : rep.per_object) {
            table << "  alpha=" << item.alpha.str() << "  dims=";
            for (std::size_t i = 0; i < item.dims.size(); ++i)
                table << (i ? "," : "") << item.dims[i];
            table << "  betti=";
            for (const auto& [d, v] : item.betti) table << d << ":" << v << " ";
            table << (item.ok ? "ok" : "FAIL") << "\n";
        }
        table << "verdict: " << (koszul ? "koszul" : "not-koszul") << "\n";
    } else {
        QuadraticPresentation pres;
        std::string name = target;
        if (target == "peras")
            pres = terminal_presentation();
        else if (target == "twisted")
            pres = twisted_presentation();
        else if (target.rfind("file:", 0) == 0) {
            pres = load_presentation(target.substr(5));
            name = target.substr(5);
        } else
            throw CLI::ValidationError("target",
                                       "expected peras|twisted|oneper|antiassoc|file:PATH");
        pres.truncation = std::max(pres.truncation, nmax);
        auto rep = koszulity_check(pres, nmax, name);
        koszul = rep.koszul;
        report = koszul_report_json(rep);
        table << "target " << name << ", arities <= " << nmax << "\n";
        for (const auto& item : rep.per_arity) {
            table << "  n=" << item.n << "  dims=";
            for (std::size_t i = 0; i < item.dims.size(); ++i)
                table << (i ? "," : "") << item.dims[i];
            table << "  betti=";
            for (const auto& [d, v] : item.betti) table << d << ":" << v << " ";
            table << (item.ok ? "ok" : "FAIL") << "\n";
        }
        table << "verdict: " << (koszul ? "koszul" : "not-koszul") << "\n";
    }

    emit(as_json ? report.dump(2) : table.str(), out_file, out);
    return koszul ? exit_ok : exit_negative;
}

int cmd_verify(int nmax, bool unsafe, bool as_json, const std::string& out_file,
               std::ostream& out) {
    if (nmax < 1) throw CLI::ValidationError("--nmax", "must be at least 1");
    if (nmax > 6 && !unsafe)
        throw CLI::ValidationError("--nmax", "capped at 6 (override with --unsafe)");

    struct Check {
        std::string name;
        bool ok;
    };
    std::vector<Check> checks;
    json per_arity = json::array();

    // partition round trips and substitution/fiber duality
    {
        bool ok = true;
        for (int n = 1; n <= nmax && ok; ++n)
            for (int k = 1; k <= n && ok; ++k)
                for (const auto& r : all_surjections(n, k)) {
                    if (!(surjection_of_partition(partition_of_surjection(r)) == r)) ok = false;
                    for (int l = 1; l <= k && ok; ++l)
                        for (const auto& gamma : monotone_surjections(k, l)) {
                            PerMorphism f(r, gamma);
                            if (!(substitute(f.target(), morphism_fibers(f)) == f.source()))
                                ok = false;
                        }
                }
        checks.push_back({"substitution_fiber_duality", ok});
    }

    QuotientData peras_dual(quadratic_dual(terminal_presentation()));
    QuotientData twisted_dual(quadratic_dual(twisted_presentation()));

    bool xi_all = true, zeta_all = true, d2_all = true, incidence_all = true;
    std::map<std::pair<int, int>, int> primal_dims, dual_dims;
    for (int n = 1; n <= nmax; ++n) {
        auto bar = dual_bar(peras_dual, n);
        auto twisted_bar = dual_bar(twisted_dual, n);
        bool d2 = is_complex(bar.complex) && is_complex(twisted_bar.complex);
        bool xi = xi_check(n);
        auto zeta = zeta_check(n);
        d2_all = d2_all && d2;
        xi_all = xi_all && xi;
        zeta_all = zeta_all && zeta.chain_iso && (n < 2 || zeta.witness.has_value());

        auto cells = permutohedron_complex(n);
        bool incidence = is_complex(cells);
        for (int d = 0; d <= cells.top_degree() && incidence; ++d)
            if (static_cast<long long>(cells.dim(d)) != count_surjections(n, n - d))
                incidence = false;
        incidence_all = incidence_all && incidence;

        primal_dims[{n, 0}] = 1;
        dual_dims[{n, n}] = 1;

        json arity_item{{"n", n},
                        {"dims", json::array()},
                        {"d_squared_zero", d2},
                        {"checks", {{"xi", xi}, {"zeta", zeta.chain_iso}}}};
        for (int d = 0; d <= bar.complex.top_degree(); ++d)
            arity_item["dims"].push_back(bar.complex.dim(d));
        per_arity.push_back(std::move(arity_item));
    }
    checks.push_back({"bar_differential_squares_to_zero", d2_all});
    checks.push_back({"permutohedron_cells", incidence_all});
    checks.push_back({"xi_intertwines", xi_all});
    checks.push_back({"zeta_chain_iso_and_witness", zeta_all});

    bool gk_ok;
    {
        auto fA = generating_series(primal_dims, nmax);
        auto fB = generating_series(dual_dims, nmax);
        gk_ok = gk_functional_check(fA, fB, nmax);
        checks.push_back({"gk_functional_equation", gk_ok});
        for (auto& item : per_arity) item["checks"]["gk"] = gk_ok;
    }

    {
        bool ok = true;
        for (int k = 1; k <= nmax; ++k) {
            auto mm = minimal_model_complex(Surjection::identity(k));
            if (!is_complex(mm.complex)) ok = false;
            if (ok) {
                auto b = betti(mm.complex);
                for (const auto& [d, v] : b)
                    if (v != (d == 0 ? 1 : 0)) ok = false;
            }
        }
        checks.push_back({"minimal_model_acyclic", ok});
    }

    {
        bool ok = true;
        QuotientData peras(terminal_presentation());
        for (int n = 3; n <= std::min(nmax, 5); ++n)
            for (const auto& alpha : all_surjections(n, 3))
                if (!check_strict_instance(alpha, peras)) ok = false;
        checks.push_back({"strict_instance_terminal", ok});
    }

    bool all_ok = true;
    for (const auto& c : checks) all_ok = all_ok && c.ok;

    json report{{"command", "verify"},
                {"nmax", nmax},
                {"per_arity", per_arity},
                {"checks", json::object()},
                {"verdict", all_ok ? "pass" : "fail"}};
    for (const auto& c : checks) report["checks"][c.name] = c.ok;

    if (as_json) {
        emit(report.dump(2), out_file, out);
    } else {
        std::ostringstream table;
        table << "verification campaign, nmax " << nmax << "\n";
        for (const auto& c : checks)
            table << "  " << (c.ok ? "pass" : "FAIL") << "  " << c.name << "\n";
        table << (all_ok ? "all checks passed" : "FAILURES present") << "\n";
        emit(table.str(), out_file, out);
    }
    return all_ok ? exit_ok : exit_negative;
}

int cmd_series(const std::string& target, int terms, bool unsafe, bool as_json,
               const std::string& out_file, std::ostream& out) {
    if (terms < 1 || terms > 10)
        throw CLI::ValidationError("--terms", "must be between 1 and 10");
    if (terms > 8 && !unsafe)
        throw CLI::ValidationError("--terms",
                                   "quotient bases grow like ordered set partitions; capped at 8 "
                                   "(override with --unsafe)");

    std::map<std::pair<int, int>, int> dims;
    if (target == "peras" || target == "twisted") {
        QuotientData q(target == "peras" ? terminal_presentation() : twisted_presentation());
        for (int n = 1; n <= terms; ++n)
            for (const auto& [d, v] : q.dims_by_degree(n)) dims[{n, d}] = v;
    } else if (target == "perasdual" || target == "twisteddual") {
        QuotientData q(quadratic_dual(target == "perasdual" ? terminal_presentation()
                                                            : twisted_presentation()));
        for (int n = 1; n <= terms; ++n)
            for (const auto& [d, v] : q.dims_by_degree(n)) dims[{n, d}] = v;
    } else {
        throw CLI::ValidationError("target", "expected peras|twisted|perasdual|twisteddual");
    }

    auto f = generating_series(dims, terms);
    if (as_json) {
        json coeffs = json::array();
        for (int m = 1; m <= terms; ++m) coeffs.push_back(f.at(m).str());
        emit(json{{"command", "series"}, {"target", target}, {"coefficients", coeffs}}.dump(2),
             out_file, out);
    } else {
        std::ostringstream os;
        for (int m = 1; m <= terms; ++m) os << (m > 1 ? ", " : "") << f.at(m).str();
        os << "\n";
        emit(os.str(), out_file, out);
    }
    return exit_ok;
}

int cmd_shrel(const std::string& alpha_text, bool primed, bool as_json,
              const std::string& out_file, std::ostream& out) {
    Surjection alpha = Surjection::parse(alpha_text);
    auto rel = generate_relation(alpha, primed);
    if (as_json) {
        emit(relation_to_json(rel), out_file, out);
    } else {
        std::ostringstream os;
        os << (rel.includes_lhs_differential ? "d(pi_alpha) = " : "0 = ");
        bool first = true;
        for (const auto& t : rel.terms) {
            os << (t.sign > 0 ? (first ? "" : " + ") : (first ? "-" : " - "));
            os << "pi[" << t.beta.str() << "] o_" << t.slot << " pi[" << t.fiber.str() << "]";
            first = false;
        }
        if (rel.terms.empty()) os << "0";
        os << "\n";
        emit(os.str(), out_file, out);
    }
    return exit_ok;
}

int cmd_minmodel(const std::string& alpha_text, bool as_json, const std::string& out_file,
                 std::ostream& out) {
    Surjection alpha = Surjection::parse(alpha_text);
    if (alpha.domain_size() > 8)
        throw CLI::ValidationError("alpha", "domain capped at 8");
    auto mm = minimal_model_complex(alpha);
    bool d2 = is_complex(mm.complex);
    std::map<int, int> b;
    if (d2) b = betti(mm.complex);
    if (as_json) {
        json dims = json::array();
        for (int d = 0; d <= mm.complex.top_degree(); ++d) dims.push_back(mm.complex.dim(d));
        emit(json{{"command", "minmodel"},
                  {"alpha", alpha.images()},
                  {"dims", dims},
                  {"d_squared_zero", d2},
                  {"betti", betti_json(b)}}
                 .dump(2),
             out_file, out);
    } else {
        std::ostringstream os;
        os << "alpha " << alpha.str() << ": dims";
        for (int d = 0; d <= mm.complex.top_degree(); ++d) os << " " << mm.complex.dim(d);
        os << ", d^2=0 " << (d2 ? "yes" : "NO") << ", betti";
        for (const auto& [d, v] : b) os << " " << d << ":" << v;
        os << "\n";
        emit(os.str(), out_file, out);
    }
    return d2 ? exit_ok : exit_negative;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact verification toolkit for shuffle algebras and their operads"};
    app.require_subcommand(1);

    int n = 0, k = 0, nmax = 4, terms = 5;
    bool as_json = false, table = false, unsafe = false, primed = false;
    std::string target, alpha_text, out_file;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_flag("--json", as_json, "emit a JSON report");
        cmd->add_flag("--table", table, "emit a plain table (default)");
        cmd->add_option("--out", out_file, "write the report to a file");
    };

    auto* enumerate = app.add_subcommand("enumerate", "list surjections with partitions and signs");
    enumerate->add_option("n", n, "domain size")->required();
    enumerate->add_option("k", k, "codomain size")->required();
    add_format(enumerate);

    auto* koszul = app.add_subcommand("koszul", "homology of the cobar construction of the dual");
    koszul->add_option("target", target, "peras|twisted|oneper|antiassoc|file:PATH")->required();
    koszul->add_option("--nmax", nmax, "largest arity / cardinality");
    koszul->add_flag("--unsafe", unsafe, "lift the runtime caps");
    add_format(koszul);

    auto* verify = app.add_subcommand("verify", "run the full invariant suite");
    verify->add_option("--nmax", nmax, "largest arity");
    verify->add_flag("--unsafe", unsafe, "lift the runtime caps");
    add_format(verify);

    auto* series = app.add_subcommand("series", "generating series of a quotient");
    series->add_option("target", target, "peras|twisted|perasdual|twisteddual")->required();
    series->add_option("--terms", terms, "number of coefficients");
    series->add_flag("--unsafe", unsafe, "lift the runtime caps");
    add_format(series);

    auto* shrel = app.add_subcommand("shrel", "coherence relation attached to a surjection");
    shrel->add_option("alpha", alpha_text, "image list, e.g. '1 2 1'")->required();
    shrel->add_flag("--primed", primed, "absorb the boundary into the terms");
    add_format(shrel);

    auto* minmodel = app.add_subcommand("minmodel", "minimal-model component at a surjection");
    minmodel->add_option("alpha", alpha_text, "image list")->required();
    add_format(minmodel);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (enumerate->parsed()) {
            if (n < 1 || k < 1 || k > n || n > 9)
                throw CLI::ValidationError("n/k", "need 1 <= k <= n <= 9");
            return cmd_enumerate(n, k, as_json, out_file, out);
        }
        if (koszul->parsed()) return cmd_koszul(target, nmax, unsafe, as_json, out_file, out);
        if (verify->parsed()) return cmd_verify(nmax, unsafe, as_json, out_file, out);
        if (series->parsed()) return cmd_series(target, terms, unsafe, as_json, out_file, out);
        if (shrel->parsed()) return cmd_shrel(alpha_text, primed, as_json, out_file, out);
        if (minmodel->parsed()) return cmd_minmodel(alpha_text, as_json, out_file, out);
    } catch (const CLI::Error& e) {
        err << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return exit_usage;
    } catch (const std::domain_error& e) {
        err << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace permutadkit
