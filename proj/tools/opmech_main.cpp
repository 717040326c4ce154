#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "opmech/assemble.hpp"
#include "opmech/expr.hpp"
#include "opmech/sweep.hpp"
#include "opmech/verify.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

opmech::SweepConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    return opmech::parse_config(read_file(path));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"h-parameterized operator algebra on the tripled space: sweeps, invariant "
                 "verification, and symbolic normal ordering"};
    app.require_subcommand(1);

    std::string config_path, output_path, format_name, expr_text;
    double h_value = 0.0;
    int levels = 4;
    bool inject_fault = false;

    CLI::App* sweep = app.add_subcommand("sweep", "run the semiclassical h-sweep");
    sweep->add_option("--config", config_path, "configuration file")->required();
    sweep->add_option("--output", output_path, "output path (default from config, else stdout)");
    sweep->add_option("--format", format_name, "csv or json (default from config)");

    CLI::App* verify = app.add_subcommand("verify", "run the invariant verification suite");
    verify->add_option("--config", config_path, "configuration file");
    verify->add_flag("--inject-nyquist-fault", inject_fault,
                     "debug: build the spectral derivative with broken frequency wrapping");

    CLI::App* weyl = app.add_subcommand("weyl", "normal-order an operator expression");
    weyl->add_option("--expr", expr_text, "expression over q, p, hbar, i with + - * ^ @ ( )")
        ->required();

    CLI::App* spectrum = app.add_subcommand("spectrum", "lowest levels of H(q~(h), p~(h))");
    spectrum->set_help_flag("--help", "print help");
    spectrum->add_option("--config", config_path, "configuration file")->required();
    spectrum->add_option("--h", h_value, "deformation parameter in [0, h0]")->required();
    spectrum->add_option("--levels", levels, "number of levels to print (default 4)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            opmech::SweepConfig cfg = load_config(config_path);
            if (!output_path.empty()) cfg.output = output_path;
            if (!format_name.empty()) {
                if (format_name == "csv")
                    cfg.format = opmech::OutputFormat::csv;
                else if (format_name == "json")
                    cfg.format = opmech::OutputFormat::json;
                else
                    throw std::invalid_argument("--format must be csv or json");
            }
            auto records = opmech::run_sweep(cfg);
            opmech::emit(records, cfg.format, cfg.output);
            std::cerr << "sweep: " << records.size() << " h-points written to "
                      << (cfg.output.empty() ? "<stdout>" : cfg.output)
                      << "; rows between the h=0 and h=h0 endpoints are diagnostic\n";
            return 0;
        }
        if (*verify) {
            opmech::SweepConfig cfg = load_config(config_path);
            int failures = opmech::run_verify(cfg, std::cout, inject_fault);
            return failures == 0 ? 0 : 1;
        }
        if (*weyl) {
            opmech::NCPolynomial f = opmech::parse_expression(expr_text);
            std::cout << "normal-ordered: " << opmech::to_text(f) << "\n";
            std::cout << "weyl basis:     " << opmech::to_text(opmech::to_weyl_basis(f)) << "\n";
            return 0;
        }
        if (*spectrum) {
            opmech::SweepConfig cfg = load_config(config_path);
            opmech::SemiclassicalParams params = opmech::make_params(h_value, cfg.h0);
            opmech::Grid gq = opmech::uniform_grid(cfg.nq, cfg.lq);
            opmech::Grid gp = opmech::uniform_grid(cfg.np, cfg.lp());
            opmech::RFactor rfac = opmech::make_rfactor(cfg.cq, cfg.cp);
            opmech::FactorRep fq = opmech::coordinate_rep(gq, params.hbar_of_h());
            opmech::FactorRep fp = opmech::momentum_rep(gp, params.hbar_of_h());
            opmech::FactorOperator qt = opmech::assemble_qtilde_factored(params, fq, fp, rfac);
            opmech::FactorOperator pt = opmech::assemble_ptilde_factored(params, fq, fp, rfac);
            opmech::NCPolynomial h_nc =
                opmech::from_weyl_basis(opmech::detail::hamiltonian_weyl(cfg));
            opmech::FactorOperator hop =
                opmech::evaluate_operator_poly(h_nc, qt, pt, params.hbar_of_h());
            auto values = opmech::lowest_eigenvalues(hop, levels);
            std::printf("# h = %.17g, hbar = %.17g\n", params.h, params.hbar_of_h());
            for (std::size_t j = 0; j < values.size(); ++j)
                std::printf("e%zu = %.17g\n", j, values[j]);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
