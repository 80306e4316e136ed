// Command-line surface. Subcommands:
//   rt linear|pl|chain     compute RT / Lefschetz / Nielsen data
//   check oracle|averaging|splitting|lift|local
//   grid                   batch verification table (CSV)
// Exit codes: 0 ok, 1 invalid input, 2 degenerate geometry, 3 identity failure.

#ifndef NVRT_CLI_HPP
#define NVRT_CLI_HPP

#include "nvrt/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace nvrt::cli {

struct RunConfig {
    long long n = 0;
    long long d = 0;
    std::string file;
    std::vector<std::string> arcs;
    int cover = 1;
    std::string phi;
    std::string format = "text";
    int bound = kDefaultSearchBound;
    std::string nudge_eps;
};

inline ArcRegion region_of(const RunConfig& cfg) {
    if (cfg.arcs.empty()) return ArcRegion::whole();
    std::vector<std::pair<Rational, Rational>> arcs;
    for (const auto& a : cfg.arcs) {
        auto colon = a.find(':');
        if (colon == std::string::npos)
            throw parse_error("arc must be lo:hi, got " + a);
        arcs.emplace_back(parse_rational(a.substr(0, colon)),
                          parse_rational(a.substr(colon + 1)));
    }
    return ArcRegion(std::move(arcs));
}

inline PLCircleMap input_map(const RunConfig& cfg) {
    PLCircleMap map = cfg.file.empty()
                          ? to_pl(LinearCircleMap{static_cast<int>(cfg.n), Int(cfg.d)})
                          : map_from_json(load_json_file(cfg.file));
    if (!cfg.nudge_eps.empty()) map = nudge(map, parse_rational(cfg.nudge_eps));
    return map;
}

inline std::string rt_text_line(const ClassSum& s, int rank) {
    std::ostringstream os;
    os << "RT = " << s.str(rank) << "  L = " << s.coefficient_sum().str()
       << "  N = " << s.nonzero_exact_count();
    return os.str();
}

inline void print_rt(std::ostream& out, const ClassSum& s, int rank, bool as_json) {
    if (as_json) {
        json j = {{"rt", class_sum_to_json(s, rank)},
                  {"lefschetz", s.coefficient_sum().str()},
                  {"nielsen_lower", s.nonzero_exact_count()},
                  {"exact", s.all_exact()},
                  {"rank", rank}};
        out << j.dump(2) << "\n";
    } else {
        out << rt_text_line(s, rank) << "\n";
        out << "exact = " << (s.all_exact() ? "true" : "false") << "\n";
    }
}

inline int cmd_rt_linear(const RunConfig& cfg, std::ostream& out) {
    const int n = static_cast<int>(cfg.n);
    if (cfg.arcs.empty() && cfg.nudge_eps.empty()) {
        print_rt(out, closed_form_rt(n, Int(cfg.d)), 1, cfg.format == "json");
        return 0;
    }
    const ClassSum s = geometric_rt(input_map(cfg), region_of(cfg), nullptr, cfg.bound);
    print_rt(out, s, 1, cfg.format == "json");
    return 0;
}

inline int cmd_rt_pl(const RunConfig& cfg, std::ostream& out) {
    const ClassSum s = geometric_rt(input_map(cfg), region_of(cfg), nullptr, cfg.bound);
    print_rt(out, s, 1, cfg.format == "json");
    return 0;
}

inline int cmd_rt_chain(const RunConfig& cfg, std::ostream& out) {
    const ChainData c = chain_from_json(load_json_file(cfg.file));
    const RTResult r = rt_via_traces(c, cfg.bound);
    print_rt(out, r.rt, c.hom.rank(), cfg.format == "json");
    return 0;
}

inline int cmd_check_oracle(const RunConfig& cfg, std::ostream& out) {
    PLCircleMap geom_map = input_map(cfg);
    PLCircleMap chain_map =
        cfg.file.empty() ? simplicial_model(static_cast<int>(cfg.n), Int(cfg.d)) : geom_map;
    const PLCircleMap rep = transversal_representative(geom_map);
    const ClassSum geometric = geometric_rt(rep, region_of(cfg), nullptr, cfg.bound);
    const RTResult chain = rt_via_traces(chain_data_of(chain_map), cfg.bound);
    out << "geometric: " << rt_text_line(geometric, 1) << "\n";
    out << "chain:     " << rt_text_line(chain.rt, 1) << "\n";
    bool ok = geometric == chain.rt;
    if (cfg.file.empty()) {
        const ClassSum closed = closed_form_rt(static_cast<int>(cfg.n), Int(cfg.d));
        out << "closed:    " << rt_text_line(closed, 1) << "\n";
        ok = ok && closed == geometric;
    }
    out << (ok ? "equal" : "NOT EQUAL") << "\n";
    return ok ? 0 : 3;
}

inline int cmd_check_averaging(const RunConfig& cfg, std::ostream& out) {
    const PLCircleMap map = transversal_representative(input_map(cfg));
    const AveragingReport rep = average_rt(map, CoverSpec{cfg.cover}, region_of(cfg), cfg.bound);
    out << "m*RT:      " << rt_text_line(rep.lhs, 1) << "\n";
    out << "sum mu.iota(RT upstairs): " << rt_text_line(rep.rhs, 1) << "\n";
    out << "coset Lefschetz numbers:";
    for (const auto& L : rep.coset_lefschetz) out << " " << L.str();
    out << "\n";
    if (!rep.division_exact) out << "division by m is NOT exact\n";
    out << (rep.ok ? "equal" : "NOT EQUAL") << "\n";
    return rep.ok ? 0 : 3;
}

inline int cmd_check_splitting(const RunConfig& cfg, std::ostream& out) {
    std::vector<PLCircleMap> singles;
    if (!cfg.file.empty()) {
        const json j = load_json_file(cfg.file);
        if (!j.contains("maps")) throw parse_error("splitting file needs \"maps\"");
        for (const auto& mj : j.at("maps")) singles.push_back(map_from_json(mj));
    } else {
        const int n = static_cast<int>(cfg.n);
        if (n < 1 || cfg.d % cfg.n != 0)
            throw parse_error("splitting needs n dividing d");
        const long long single_degree = cfg.d / cfg.n;
        for (int k = 1; k <= n; ++k) {
            std::vector<BreakPoint> br = {
                {Rational(0), Rational(Int(k - 1), Int(n))},
                {Rational(1), Rational(Int(k - 1), Int(n)) + Rational(single_degree)}};
            singles.emplace_back(1, std::vector<std::vector<BreakPoint>>{br});
        }
    }
    if (!cfg.nudge_eps.empty()) {
        const Rational eps = parse_rational(cfg.nudge_eps);
        for (auto& s : singles) s = nudge(s, eps);
    }
    // one common nudge keeps the family disjoint when a member is degenerate
    static const int primes[] = {97, 89, 83, 79, 73};
    for (int attempt = 0; attempt <= 5; ++attempt) {
        std::vector<PLCircleMap> trial = singles;
        if (attempt > 0) {
            const Rational eps(1, primes[attempt - 1]);
            for (auto& s : trial) s = nudge(s, eps);
        }
        try {
            const SplitReport rep = split_rt_check(trial, cfg.bound);
            out << "combined: " << rt_text_line(rep.combined, 1) << "\n";
            out << "sum of embedded single-valued traces: "
                << rt_text_line(rep.embedded_sum, 1) << "\n";
            out << (rep.ok ? "equal" : "NOT EQUAL") << "\n";
            return rep.ok ? 0 : 3;
        } catch (const degenerate_error&) {
            continue;
        }
    }
    throw degenerate_error("no common transversal nudge found for the split family");
}

inline int cmd_check_lift(const RunConfig& cfg, std::ostream& out) {
    const PLCircleMap map = transversal_representative(input_map(cfg));
    if (cfg.phi.empty()) throw parse_error("check lift needs --phi");
    const SemidirectElement Phi = SemidirectElement::parse(cfg.phi, map.n());
    const LiftChangeReport rep = change_of_lift_check(map, Phi, cfg.bound);
    out << "mu(RT under shifted lift): " << rt_text_line(rep.transported, 1) << "\n";
    out << "RT under original lift:    " << rt_text_line(rep.direct, 1) << "\n";
    out << (rep.ok ? "equal" : "NOT EQUAL") << "\n";
    return rep.ok ? 0 : 3;
}

inline int cmd_check_local(const RunConfig& cfg, std::ostream& out) {
    const PLCircleMap map = transversal_representative(input_map(cfg));
    const auto fps = fixed_points(map);
    bool ok = true;
    const ClassSum global = geometric_rt(map, ArcRegion::whole(), nullptr, cfg.bound);
    ClassSum rebuilt;
    std::vector<std::pair<Rational, Rational>> arcs;
    const InducedHom h = induced_hom_of(map);
    for (std::size_t i = 0; i < fps.size(); ++i) {
        Rational gap_prev = i == 0 ? Rational(fps[i].t - (fps.back().t - 1))
                                   : Rational(fps[i].t - fps[i - 1].t);
        Rational gap_next = i + 1 == fps.size() ? Rational((fps.front().t + 1) - fps[i].t)
                                                : Rational(fps[i + 1].t - fps[i].t);
        if (fps.size() == 1) gap_prev = gap_next = Rational(1, 2);
        const ArcRegion arc(std::vector<std::pair<Rational, Rational>>{
            {fps[i].t - gap_prev / 3, fps[i].t + gap_next / 3}});
        const ClassSum local = geometric_rt(map, arc, nullptr, cfg.bound);
        ClassSum expected;
        expected.add(
            canonicalize(h, MarkedPair(GroupElement::power_of_a(fps[i].deck), fps[i].k),
                         cfg.bound),
            fps[i].index);
        if (local != expected) {
            out << "isolated-point value fails at t = " << format_rational(fps[i].t) << "\n";
            ok = false;
        }
        rebuilt = rebuilt + local;
        arcs.push_back({fps[i].t - gap_prev / 3, fps[i].t + gap_next / 3});
    }
    if (rebuilt != global) {
        out << "reconstruction from per-fixed-point arcs fails\n";
        ok = false;
    }
    if (arcs.size() >= 2) {
        const ArcRegion both(std::vector<std::pair<Rational, Rational>>{arcs[0], arcs[1]});
        const ClassSum sum = geometric_rt(map, both, nullptr, cfg.bound);
        const ClassSum parts =
            geometric_rt(map, ArcRegion({arcs[0]}), nullptr, cfg.bound) +
            geometric_rt(map, ArcRegion({arcs[1]}), nullptr, cfg.bound);
        if (sum != parts) {
            out << "additivity fails on the first two arcs\n";
            ok = false;
        }
    }
    if (!arcs.empty()) {
        // excision: shrink the first arc around its fixed point
        const Rational t0 = fps[0].t;
        const ArcRegion small(std::vector<std::pair<Rational, Rational>>{
            {t0 - (t0 - arcs[0].first) / 2, t0 + (arcs[0].second - t0) / 2}});
        if (geometric_rt(map, small, nullptr, cfg.bound) !=
            geometric_rt(map, ArcRegion({arcs[0]}), nullptr, cfg.bound)) {
            out << "excision fails on the first arc\n";
            ok = false;
        }
    }
    out << "fixed points: " << fps.size() << "\n";
    out << "global: " << rt_text_line(global, 1) << "\n";
    out << (ok ? "local axioms hold" : "LOCAL AXIOMS FAIL") << "\n";
    return ok ? 0 : 3;
}

inline int cmd_grid(int n_max, long long d_max, std::ostream& out) {
    out << "n,d,L,N,exact\n";
    for (int n = 1; n <= n_max; ++n)
        for (long long d = -d_max; d <= d_max; ++d) {
            const ClassSum s = closed_form_rt(n, Int(d));
            out << n << "," << d << "," << s.coefficient_sum().str() << ","
                << s.nonzero_exact_count() << "," << (s.all_exact() ? "true" : "false")
                << "\n";
        }
    return 0;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Reidemeister trace computations for n-valued circle maps"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_map_opts = [&cfg](CLI::App* c, bool with_file, bool with_linear) {
        if (with_linear) {
            c->add_option("--n", cfg.n, "branch count");
            c->add_option("--d", cfg.d, "degree");
        }
        if (with_file) c->add_option("--file", cfg.file, "input JSON file");
        c->add_option("--arc", cfg.arcs, "region arc lo:hi (repeatable)");
        c->add_option("--bound", cfg.bound, "witness search bound");
        c->add_option("--nudge", cfg.nudge_eps, "rational homotopy shift");
        c->add_option("--format", cfg.format, "text|json");
    };

    CLI::App* rt = app.add_subcommand("rt", "compute the Reidemeister trace");
    rt->require_subcommand(1);
    CLI::App* rt_linear = rt->add_subcommand("linear", "linear n-valued map of degree d");
    add_map_opts(rt_linear, false, true);
    rt_linear->get_option("--n")->required();
    rt_linear->get_option("--d")->required();
    CLI::App* rt_pl = rt->add_subcommand("pl", "piecewise-linear map from file");
    add_map_opts(rt_pl, true, false);
    rt_pl->get_option("--file")->required();
    CLI::App* rt_chain = rt->add_subcommand("chain", "equivariant chain data from file");
    add_map_opts(rt_chain, true, false);
    rt_chain->get_option("--file")->required();

    CLI::App* check = app.add_subcommand("check", "verify a theorem identity");
    check->require_subcommand(1);
    CLI::App* c_oracle = check->add_subcommand("oracle", "geometric vs chain vs closed form");
    add_map_opts(c_oracle, true, true);
    CLI::App* c_avg = check->add_subcommand("averaging", "finite-cover averaging identity");
    add_map_opts(c_avg, true, true);
    c_avg->add_option("--cover", cfg.cover, "cover degree m")->required();
    CLI::App* c_split = check->add_subcommand("splitting", "split-map decomposition");
    add_map_opts(c_split, true, true);
    CLI::App* c_lift = check->add_subcommand("lift", "change-of-lift transport");
    add_map_opts(c_lift, true, true);
    c_lift->add_option("--phi", cfg.phi, "semidirect element, e.g. \"(1,1;(1 2))\"");
    CLI::App* c_local = check->add_subcommand("local", "local trace axioms");
    add_map_opts(c_local, true, true);

    CLI::App* grid = app.add_subcommand("grid", "CSV verification table");
    int n_max = 3;
    long long d_max = 6;
    grid->add_option("--n-max", n_max, "largest branch count");
    grid->add_option("--d-max", d_max, "largest |degree|");

    try {
        std::vector<const char*> argv;
        argv.push_back("nvrt");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (rt_linear->parsed()) return cmd_rt_linear(cfg, out);
        if (rt_pl->parsed()) return cmd_rt_pl(cfg, out);
        if (rt_chain->parsed()) return cmd_rt_chain(cfg, out);
        if (c_oracle->parsed()) return cmd_check_oracle(cfg, out);
        if (c_avg->parsed()) return cmd_check_averaging(cfg, out);
        if (c_split->parsed()) return cmd_check_splitting(cfg, out);
        if (c_lift->parsed()) return cmd_check_lift(cfg, out);
        if (c_local->parsed()) return cmd_check_local(cfg, out);
        if (grid->parsed()) return cmd_grid(n_max, d_max, out);
    } catch (const degenerate_error& e) {
        err << "degenerate geometry: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        err << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const validation_error& e) {
        err << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no command\n";
    return 1;
}

} // namespace nvrt::cli

#endif
