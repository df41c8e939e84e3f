#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "hm/error.hpp"
#include "hm/runner.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"kcat: Hochschild cohomology and long exact sequences for finite K-linear categories"};
    std::string path;
    std::string field;
    hm::cli::RunOptions opts;
    bool as_json = false;
    app.add_option("workspace", path, "workspace file (.kcat)")->required();
    app.add_option("--max-degree", opts.max_degree, "highest degree computed")->capture_default_str();
    app.add_option("--field", field, "Q or gf:p, overrides the fields declared in the file");
    app.add_flag("--json", as_json, "one JSON document per task");
    app.add_option("--seed", opts.seed, "seed for randomized property sampling")->capture_default_str();
    app.add_flag("--verify-oracle", opts.verify_oracle, "cross-check against materialized bimodule resolutions");
    app.add_option("--path-bound", opts.path_bound, "finiteness bound for quiver path lengths")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        if (!field.empty()) opts.field = hm::ws::parse_field(field);
    } catch (const hm::Error& e) {
        std::cerr << e.what() << "\n";
        return hm::cli::kExitInvalid;
    }
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot read " << path << "\n";
        return hm::cli::kExitInvalid;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const auto result = hm::cli::run_source(buf.str(), opts);
    for (const auto& r : result.reports) {
        if (as_json) std::cout << r.dump() << "\n";
        else std::cout << hm::cli::render_human(r);
    }
    return result.status;
}
