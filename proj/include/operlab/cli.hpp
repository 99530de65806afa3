#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage or input error,
// 2 internal-consistency failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "operlab/config.hpp"
#include "operlab/json_io.hpp"

namespace operlab {

namespace detail {

inline Json read_json_input(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path);
        if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw Error(Errc::Parse, path + ": " + e.what());
    }
}

inline std::vector<ProjPoint> parse_points(const std::string& s) {
    std::vector<ProjPoint> pts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) pts.push_back(point_from_json(Json(trim(item))));
    return pts;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations with dormant differential operators in characteristic p", "operlab"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> budget, seed;
    std::optional<unsigned> workers;
    bool quiet = false;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--budget", budget, "maximum number of grid candidates per search");
    app.add_option("--workers", workers, "worker threads for searches");
    app.add_option("--seed", seed, "seed for the eigenvalue splitting");
    app.add_flag("--quiet", quiet, "suppress progress on stderr");

    auto* dormant = app.add_subcommand("dormant", "run the three dormancy tests on an operator");
    std::string dormant_input;
    std::optional<std::size_t> bound;
    dormant->add_option("--input", dormant_input, "operator JSON file, - for stdin")->required();
    dormant->add_option("--bound", bound, "degree bound for the solution-rank test (default n*p)");

    auto* dualize_cmd = app.add_subcommand("dualize", "dual operator and self-duality checks");
    std::string dualize_input;
    dualize_cmd->add_option("--input", dualize_input, "operator JSON file, - for stdin")->required();

    auto* radii_cmd = app.add_subcommand("radii", "enumerate radii classes or apply an involution");
    std::uint32_t rp = 0;
    std::size_t rn = 0;
    bool sym = false;
    std::vector<std::string> apply;
    radii_cmd->add_option("--p", rp, "prime")->required();
    radii_cmd->add_option("--n", rn, "set size")->required();
    radii_cmd->add_flag("--sym", sym, "only classes fixed by negation");
    radii_cmd->add_option("--apply", apply, "tri|comp|neg REP, e.g. --apply tri 0,1")->expected(2);

    auto* search_cmd = app.add_subcommand("search", "enumerate dormant opers on the projective line");
    std::uint32_t sp = 0;
    int sn = 0;
    std::string points = "0,1,inf", radii_filter, self_dual = "none", emit = "both";
    bool csv = false;
    search_cmd->add_option("--p", sp, "prime")->required();
    search_cmd->add_option("--n", sn, "order")->required();
    search_cmd->add_option("--points", points, "marked points, comma separated, must include inf");
    search_cmd->add_option("--radii", radii_filter, "radii filter, e.g. 0,1;0,2;0,1");
    search_cmd->add_option("--self-dual", self_dual, "none|orthogonal|symplectic");
    search_cmd->add_option("--emit", emit, "operators|table|both")->check(CLI::IsMember({"operators", "table", "both"}));
    search_cmd->add_flag("--csv", csv, "print the degree table as CSV");

    auto* fusion_cmd = app.add_subcommand("fusion", "pseudo-fusion ring, characters and Verlinde degrees");
    std::string table_path, table4_path;
    std::vector<std::string> verlinde;
    fusion_cmd->add_option("--table", table_path, "three-point table written by search")->required();
    fusion_cmd->add_option("--verlinde", verlinde, "g=G,rho=KEY (repeatable)");
    fusion_cmd->add_option("--factorization-check", table4_path, "four-point table written by search");

    auto* bc_cmd = app.add_subcommand("bc-verify", "orthogonal/symplectic bijection under dualization");
    std::uint32_t bp = 0;
    int ell = 0, m = 0;
    std::size_t br = 3;
    bc_cmd->add_option("--p", bp, "prime")->required();
    bc_cmd->add_option("--ell", ell, "orthogonal order is 2 ell + 1")->required();
    bc_cmd->add_option("--m", m, "symplectic order is 2 m")->required();
    bc_cmd->add_option("--r", br, "number of marked points (0, 1, ..., r-2, inf)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) load_config_file(cfg, config_path);
        apply_environment(cfg);
        if (budget) cfg.budget = *budget;
        if (workers) cfg.workers = *workers;
        if (seed) cfg.seed = *seed;
        if (quiet) cfg.quiet = true;
        if (csv) cfg.output_format = "csv";
        cfg.validate();

        SearchOptions sopt;
        sopt.budget = cfg.budget;
        sopt.workers = cfg.workers;
        sopt.closure_counts = true;
        if (!cfg.quiet) sopt.log = [&err](const std::string& s) { err << s << "\n"; };

        Json doc;
        bool consistent = true;

        if (*dormant) {
            const OreOperator d = operator_from_json(detail::read_json_input(dormant_input));
            const bool by_div = dormant_by_division(d);
            const bool by_pc = dormant_by_pcurvature(d).flag;
            Json rank = nullptr;
            bool agree = by_div == by_pc;
            if (d.order() < static_cast<int>(d.prime().value())) {
                try {
                    const bool by_rank = bound ? dormant_by_solution_rank(d, *bound) : dormant_by_solution_rank(d);
                    rank = by_rank;
                    agree = agree && by_rank == by_div;
                } catch (const Error& e) {
                    if (e.code() != Errc::NoOrdinaryPoint) throw;
                }
            }
            doc = {{"operator", to_json(d)},
                   {"dormant", by_div},
                   {"oracles", {{"division", by_div}, {"pcurvature", by_pc}, {"solution_rank", rank}}}};
            if (by_div) {
                Json ex = Json::object();
                std::vector<ProjPoint> pts{ProjPoint::at(0)};
                for (auto c : finite_singular_points(d))
                    if (c != 0) pts.push_back(ProjPoint::at(c));
                pts.push_back(ProjPoint::infinity());
                for (const auto& pt : pts) ex[pt.to_string()] = to_json(exponent_set_of(indicial_polynomial(d, pt)));
                doc["exponents"] = ex;
            }
            consistent = agree;
        } else if (*dualize_cmd) {
            const OreOperator d = operator_from_json(detail::read_json_input(dualize_input));
            const DualPair pair = dualize(d);
            const SelfDualityKind kd = self_duality_kind(pair.d_dual);
            const bool ts = two_sided(pair);
            doc = {{"input", to_json(d)},
                   {"input_kind", kind_name(self_duality_kind(d))},
                   {"dual", to_json(pair.d_dual)},
                   {"kind", kind_name(kd)},
                   {"checks", {{"two_sided", ts}, {"self_dual_dual", kd != SelfDualityKind::None}}}};
            consistent = ts;
        } else if (*radii_cmd) {
            const Prime p(rp);
            if (apply.empty()) {
                Json cs = Json::array();
                const auto classes = enumerate_classes(p, rn, sym);
                for (const auto& c : classes) cs.push_back(to_json(c));
                doc = {{"p", rp}, {"n", rn}, {"symmetric_only", sym}, {"count", classes.size()}, {"classes", cs}};
            } else {
                const RadiusClass c = canonicalize(parse_exponent_set(p, apply[1]));
                if (c.size() != rn) throw Error(Errc::InvalidArgument, "REP does not have n elements");
                RadiusClass res = c;
                if (apply[0] == "tri") res = involution_tri(c);
                else if (apply[0] == "comp") res = involution_comp(c);
                else if (apply[0] == "neg") res = involution_neg(c);
                else throw Error(Errc::InvalidArgument, "--apply expects tri, comp or neg");
                doc = {{"op", apply[0]}, {"input", to_json(c)}, {"result", to_json(res)},
                       {"symmetric", is_symmetric(res)}};
            }
        } else if (*search_cmd) {
            const Prime p(sp);
            SearchSpec spec{p, sn, detail::parse_points(points), std::nullopt, parse_kind(self_dual)};
            if (!radii_filter.empty()) spec.radii = parse_radii_key(p, radii_filter);
            const SearchResult res = run_search(spec, sopt);
            if (cfg.output_format == "csv") {
                out << table_csv(table_from(spec, res));
                return 0;
            }
            doc = search_document(spec, res, emit != "table", emit != "operators");
        } else if (*fusion_cmd) {
            const DegreeTable t3 = table_from_json(detail::read_json_input(table_path));
            const FusionRing ring = build_ring(t3);
            const auto chars = characters(ring, cfg.seed);
            doc = {{"ring", to_json(ring, chars)}};
            Json vs = Json::array();
            for (const auto& v : verlinde) {
                const auto cut = v.find(",rho=");
                if (v.rfind("g=", 0) != 0 || cut == std::string::npos)
                    throw Error(Errc::InvalidArgument, "--verlinde expects g=G,rho=KEY");
                const int g = static_cast<int>(detail::parse_u64("g", v.substr(2, cut - 2)));
                const std::string key = v.substr(cut + 5);
                const RadiusTuple rho = key.empty() ? RadiusTuple{} : parse_radii_key(t3.prime, key);
                const auto val = verlinde_degree(ring, chars, g, rho);
                vs.push_back({{"g", g}, {"rho", key}, {"value", val.value}, {"raw", val.raw}});
            }
            if (!verlinde.empty()) doc["verlinde"] = vs;
            if (!table4_path.empty()) {
                const auto rep = factorization_check(ring, table_from_json(detail::read_json_input(table4_path)));
                doc["factorization"] = {{"ok", rep.ok}, {"checked", rep.checked}, {"mismatches", rep.mismatches}};
                consistent = rep.ok;
            }
        } else if (*bc_cmd) {
            const auto rep = verify_bc_bijection(Prime(bp), ell, m, br, sopt);
            Json per = Json::object();
            for (const auto& [k, c] : rep.per_radii) per[k] = Json::array({c.first, c.second});
            doc = {{"p", bp},
                   {"ell", ell},
                   {"m", m},
                   {"r", br},
                   {"bijection", rep.bijection},
                   {"counts", {{"orthogonal", rep.count_orthogonal}, {"symplectic", rep.count_symplectic}}},
                   {"per_radii", per},
                   {"mismatches", rep.mismatches}};
            consistent = rep.bijection;
        }

        out << doc.dump(2) << "\n";
        if (!consistent) {
            err << "consistency check failed\n";
            return 2;
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == Errc::Internal ? 2 : 1;
    } catch (const Json::exception& e) {
        err << "error: Parse: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace operlab
