#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "symstrat/parallel.hpp"
#include "symstrat/report.hpp"

using namespace symstrat;

namespace {

enum class OutputFormat { Json, Csv, Markdown };

struct GlobalOpts {
    bool json = false;
    bool csv = false;
    bool markdown = false;
    int limit = 8;
    std::string cache_dir;
    unsigned jobs = 0;
    std::string dump_complex;

    OutputFormat format() const {
        if (csv) return OutputFormat::Csv;
        if (markdown) return OutputFormat::Markdown;
        return OutputFormat::Json;
    }
    RunOptions run_options() const {
        RunOptions opts;
        opts.cache = ResultCache::from_env(cache_dir);
        opts.jobs = jobs ? jobs : std::min(default_jobs(), 4u);
        opts.size_limit = limit;
        return opts;
    }
};

void add_global_flags(CLI::App* app, GlobalOpts& g) {
    app->add_flag("--json", g.json, "JSON output (default)");
    app->add_flag("--csv", g.csv, "CSV output");
    app->add_flag("--markdown", g.markdown, "Markdown output");
    app->add_option("--limit", g.limit, "total point limit for cell models")->capture_default_str();
    app->add_option("--cache", g.cache_dir, "cache directory ('off' disables; default $SYMSTRAT_CACHE or .symstrat-cache)");
    app->add_option("--jobs", g.jobs, "worker threads (default: hardware, capped at 4)");
}

void emit(const ordered_json& payload, const GlobalOpts& g) {
    switch (g.format()) {
    case OutputFormat::Json: std::cout << payload.dump(2) << "\n"; break;
    case OutputFormat::Csv: std::cout << table_json_to_csv(payload); break;
    case OutputFormat::Markdown: std::cout << table_json_to_markdown(payload); break;
    }
}

int emit_report(const VerificationReport& report, const GlobalOpts& g) {
    switch (g.format()) {
    case OutputFormat::Json: std::cout << report.to_json().dump(2) << "\n"; break;
    case OutputFormat::Csv: std::cout << report.to_csv(); break;
    case OutputFormat::Markdown: std::cout << report.to_markdown(); break;
    }
    return report.pass ? 0 : 1;
}

void maybe_dump_complex(const GlobalOpts& g, const FNSpec& spec) {
    if (g.dump_complex.empty()) return;
    auto built = ComplexStore::global().get(spec, g.limit);
    std::ofstream out(g.dump_complex);
    out << built->serialize() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symstrat: cell models, exact homology and stability checks for coloured "
                 "configuration spaces and symmetric-product complements in the plane"};
    app.require_subcommand(1);
    GlobalOpts g;

    // partitions
    int part_n = 0;
    CLI::App* cmd_partitions = app.add_subcommand("partitions", "list the partitions of n");
    cmd_partitions->add_option("--n", part_n, "the integer to partition")->required();
    add_global_flags(cmd_partitions, g);

    // strata
    std::string strata_partition;
    int strata_dim = 2;
    CLI::App* cmd_strata = app.add_subcommand("strata", "stratification table of the lambda complement");
    cmd_strata->add_option("--partition", strata_partition, "lambda as CSV, e.g. 1,2")->required();
    cmd_strata->add_option("--dim", strata_dim, "ambient manifold dimension")->capture_default_str();
    add_global_flags(cmd_strata, g);

    // chi
    std::string chi_partition;
    long long chi_x = 1;
    int chi_dim = 2;
    CLI::App* cmd_chi = app.add_subcommand("chi", "compactly supported Euler characteristic of the complement");
    cmd_chi->add_option("--partition", chi_partition, "lambda as CSV")->required();
    cmd_chi->add_option("--chi-x", chi_x, "chi_c of the ambient manifold")->capture_default_str();
    cmd_chi->add_option("--dim", chi_dim, "ambient manifold dimension")->capture_default_str();
    add_global_flags(cmd_chi, g);

    // homology
    CLI::App* cmd_homology = app.add_subcommand("homology", "homology of a cell model");
    std::string conf_colours, wcomp_partition, coeff_str = "Z";
    long long coeff_prime = 2;
    bool dual = false;
    CLI::App* homology_conf = cmd_homology->add_subcommand("conf", "coloured configuration space of the plane");
    homology_conf->add_option("--colours", conf_colours, "colour counts as CSV, e.g. 2,3")->required();
    CLI::App* homology_wcomp = cmd_homology->add_subcommand("wcomp", "complement of the closed lambda stratum");
    homology_wcomp->add_option("--partition", wcomp_partition, "lambda as CSV")->required();
    cmd_homology->require_subcommand(1);
    for (CLI::App* sub : {homology_conf, homology_wcomp}) {
        sub->add_option("--coeff", coeff_str, "coefficients: Z, Q or Zp")->capture_default_str();
        sub->add_option("--prime", coeff_prime, "prime for Zp")->capture_default_str();
        sub->add_flag("--dual", dual, "report ordinary homology through Poincare duality");
        sub->add_option("--dump-complex", g.dump_complex, "write the serialized complex to a file");
        add_global_flags(sub, g);
    }

    // spectral
    std::string spectral_partition, spectral_field = "Q";
    long long spectral_prime = 2;
    CLI::App* cmd_spectral = app.add_subcommand("spectral", "spectral sequence of the codimension filtration");
    cmd_spectral->add_option("--partition", spectral_partition, "lambda as CSV")->required();
    cmd_spectral->add_option("--field", spectral_field, "Q or Zp")->capture_default_str();
    cmd_spectral->add_option("--prime", spectral_prime, "prime for Zp")->capture_default_str();
    add_global_flags(cmd_spectral, g);

    // verify <suite>
    CLI::App* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    cmd_verify->require_subcommand(1);
    int verify_limit_total = 7;
    CLI::App* verify_coloured = cmd_verify->add_subcommand("coloured-stability",
                                                           "integral stability for coloured configurations");
    verify_coloured->add_option("--max-total", verify_limit_total,
                                "vectors with fewer than this many points are tested")
        ->capture_default_str();
    add_global_flags(verify_coloured, g);

    std::string verify_symcomp_partition;
    int verify_jmax = -1;
    CLI::App* verify_symcomp = cmd_verify->add_subcommand("symcomp-stability",
                                                          "rational stability for symmetric complements");
    verify_symcomp->add_option("--partition", verify_symcomp_partition, "lambda as CSV")->required();
    verify_symcomp->add_option("--jmax", verify_jmax,
                               "largest j compared (default: as far as the point limit allows)");
    add_global_flags(verify_symcomp, g);

    int strata_nmax = 6, strata_jmax = 6;
    std::string strata_dims = "2,3";
    CLI::App* verify_strata_cmd = cmd_verify->add_subcommand("strata", "stratum count agreement");
    verify_strata_cmd->add_option("--nmax", strata_nmax, "largest n for lambda")->capture_default_str();
    verify_strata_cmd->add_option("--jmax", strata_jmax, "largest j")->capture_default_str();
    verify_strata_cmd->add_option("--dims", strata_dims, "ambient dimensions, CSV")->capture_default_str();
    add_global_flags(verify_strata_cmd, g);

    CLI::App* verify_oracles_cmd = cmd_verify->add_subcommand("oracles", "pipeline against independent ground truths");
    add_global_flags(verify_oracles_cmd, g);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_partitions->parsed()) {
            emit(partitions_command(part_n), g);
            return 0;
        }
        if (cmd_strata->parsed()) {
            emit(strata_command(Partition::parse(strata_partition), strata_dim), g);
            return 0;
        }
        if (cmd_chi->parsed()) {
            emit(chi_command(Partition::parse(chi_partition), chi_x, chi_dim), g);
            return 0;
        }
        if (cmd_homology->parsed()) {
            CoeffSystem coeff = CoeffSystem::parse(coeff_str, coeff_prime);
            FNSpec spec = homology_conf->parsed()
                              ? FNSpec::conf_space(ColourVector::parse(conf_colours))
                              : FNSpec::wcomp(Partition::parse(wcomp_partition));
            maybe_dump_complex(g, spec);
            emit(homology_command(spec, coeff, dual, g.run_options()), g);
            return 0;
        }
        if (cmd_spectral->parsed()) {
            CoeffSystem field = CoeffSystem::parse(spectral_field, spectral_prime);
            emit(spectral_command(Partition::parse(spectral_partition), field, g.run_options()), g);
            return 0;
        }
        if (verify_coloured->parsed())
            return emit_report(verify_coloured_stability(verify_limit_total, g.run_options()), g);
        if (verify_symcomp->parsed()) {
            Partition lambda = Partition::parse(verify_symcomp_partition);
            int jmax = verify_jmax >= 0 ? verify_jmax : g.limit - 1 - lambda.n();
            if (jmax < 0)
                throw Error(errc::bad_input, "partition too large for the point limit");
            return emit_report(verify_symcomp_stability(lambda, jmax, g.run_options()), g);
        }
        if (verify_strata_cmd->parsed()) {
            std::vector<int> dims;
            for (int d : ColourVector::parse(strata_dims).counts()) dims.push_back(d);
            return emit_report(verify_strata(strata_nmax, strata_jmax, dims, g.run_options()), g);
        }
        if (verify_oracles_cmd->parsed())
            return emit_report(verify_oracles(g.run_options()), g);
    } catch (const Error& e) {
        std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        if (e.is_internal()) return 3;
        if (e.code() == errc::bad_input) return 2;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
