#include "planestat/cli.hpp"

#include "planestat/asymptotics.hpp"
#include "planestat/errors.hpp"
#include "planestat/oracle.hpp"
#include "planestat/report.hpp"
#include "planestat/statistics.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace planestat {

namespace {

struct RunConfig {
    int precision = 50;
    long maxN = 5000;
    std::vector<long> nGrid;
    std::string statistic = "trace";
    std::string format = "csv";
    std::string outPath;
    long n = 0;
    int gridSize = 64;
};

int out_digits(const RunConfig& c) { return std::min(c.precision, 30); }

std::string rational_str(const mpq_class& q) { return q.get_str(); }

std::string decimal_str(const mpq_class& q, int dd) { return BigFloat(q).to_string(dd); }

// Ratio of two already-emitted decimal strings, so that re-parsing and
// re-dividing the emitted cells reproduces the emitted ratio.
std::string ratio_str(const std::string& exact, const std::string& asym, int dd) {
    BigFloat e = BigFloat::from_string(exact);
    BigFloat a = BigFloat::from_string(asym);
    return (e / a).to_string(dd);
}

void sort_grid(std::vector<long>& g) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
}

void append_truncation_meta(StatReport& rep, const Engine& engine) {
    for (const auto& [k, v] : engine.truncation_log())
        rep.meta.emplace_back("trunc." + k, std::to_string(v));
}

void common_config(StatReport& rep, const std::string& command, const RunConfig& cfg) {
    rep.config.emplace_back("command", command);
    rep.config.emplace_back("precision", std::to_string(cfg.precision));
    rep.config.emplace_back("format", cfg.format);
    rep.config.emplace_back("seedless_determinism", "true");
}

void grid_config(StatReport& rep, const RunConfig& cfg) {
    rep.config.emplace_back("max_n", std::to_string(cfg.maxN));
    std::string g;
    for (size_t i = 0; i < cfg.nGrid.size(); ++i) {
        if (i) g += ",";
        g += std::to_string(cfg.nGrid[i]);
    }
    rep.config.emplace_back("n_grid", g);
}

void check_grid(const RunConfig& cfg) {
    if (cfg.nGrid.empty()) throw std::invalid_argument("empty --n-grid");
    for (long n : cfg.nGrid) {
        if (n < 1) throw std::invalid_argument("--n-grid entries must be >= 1");
        if (n > cfg.maxN)
            throw RangeError("exact computation requested beyond --max-n (n=" + std::to_string(n) + ")");
    }
}

StatReport make_count_report(Engine& engine, const RunConfig& cfg, std::ostream& err) {
    check_grid(cfg);
    const int dd = out_digits(cfg);
    long top = cfg.nGrid.back();
    err << "# planestat: exact q-series up to n=" << top << "\n";
    const auto& q = engine.exact_q(top);

    StatReport rep;
    common_config(rep, "count", cfg);
    grid_config(rep, cfg);
    rep.columns = {"n", "exact", "exact_decimal", "wright", "ratio_wright", "hayman", "ratio_hayman"};
    for (long n : cfg.nGrid) {
        mpq_class exact(q[static_cast<size_t>(n)]);
        std::string exactDec = decimal_str(exact, dd);
        std::string wright = engine.wright_q(n).to_string(dd);
        std::string hayman = engine.hayman_q_estimate(n).to_string(dd);
        rep.rows.push_back({std::to_string(n), rational_str(exact), exactDec, wright,
                            ratio_str(exactDec, wright, dd), hayman, ratio_str(exactDec, hayman, dd)});
    }
    rep.meta.emplace_back("methods", "exact-series,wright,hayman");
    append_truncation_meta(rep, engine);
    return rep;
}

StatReport make_stat_report(Engine& engine, const RunConfig& cfg, std::ostream& err) {
    check_grid(cfg);
    const int dd = out_digits(cfg);
    long top = cfg.nGrid.back();
    bool dim = cfg.statistic == "dimension";
    err << "# planestat: exact " << cfg.statistic << " expectations up to n=" << top << "\n";
    if (dim) engine.dimension_table(top);

    StatReport rep;
    common_config(rep, "stat", cfg);
    rep.config.emplace_back("statistic", cfg.statistic);
    grid_config(rep, cfg);
    rep.columns = {"n", "exact", "exact_decimal", "saddle", "ratio_saddle", "asymptotic", "ratio_asymptotic"};
    for (long n : cfg.nGrid) {
        mpq_class exact = dim ? engine.dimension_table(top)[static_cast<size_t>(n)]
                              : engine.exact_expected_trace(n);
        std::string exactDec = decimal_str(exact, dd);
        SaddlePoint sp = engine.solve_saddle(n);
        BigFloat saddle = dim ? engine.f2_at_saddle(sp.d, engine.f2_default_cutoff(sp.d))
                              : engine.f1_at_saddle(sp.d);
        std::string saddleStr = saddle.to_string(dd);
        std::string asymStr, ratioAsym;
        if (!dim) {
            asymStr = engine.expected_trace_asymptotic(n).to_string(dd);
            ratioAsym = ratio_str(exactDec, asymStr, dd);
        } else if (n >= 2) {
            asymStr = engine.expected_dimension_asymptotic(n).to_string(dd);
            ratioAsym = ratio_str(exactDec, asymStr, dd);
        }
        rep.rows.push_back({std::to_string(n), rational_str(exact), exactDec, saddleStr,
                            ratio_str(exactDec, saddleStr, dd), asymStr, ratioAsym});
    }
    rep.meta.emplace_back("methods", dim ? "exact-series,f2-saddle,kappa2-power-law"
                                         : "exact-series,f1-saddle,kappa1-power-law");
    append_truncation_meta(rep, engine);
    return rep;
}

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

// Oracle distributions vs the exact generating-function routes at one n.
struct OracleCrossCheck {
    bool countMatch = false;
    bool traceMatch = false;
    bool largestPartMatch = false;
    bool symmetry = false;
    bool expectedTraceMatch = false;
    bool expectedDimensionMatch = false;
    bool all() const {
        return countMatch && traceMatch && largestPartMatch && symmetry &&
               expectedTraceMatch && expectedDimensionMatch;
    }
};

OracleCrossCheck cross_check(Engine& engine, const OracleStats& st) {
    OracleCrossCheck c;
    int n = st.n;
    const auto& q = engine.exact_q(n);
    c.countMatch = (q[static_cast<size_t>(n)] == st.count);

    TraceDistribution td = trace_distribution(n);
    c.traceMatch = true;
    for (int m = 1; m <= n; ++m) {
        auto it = st.traceDist.find(m);
        mpq_class oracleP(it == st.traceDist.end() ? 0 : it->second, st.count);
        oracleP.canonicalize();
        auto jt = td.probs.find(m);
        mpq_class seriesP = (jt == td.probs.end()) ? mpq_class(0) : jt->second;
        if (oracleP != seriesP) c.traceMatch = false;
    }

    c.largestPartMatch = true;
    long cum = 0;
    for (int m = 0; m <= n; ++m) {
        if (m >= 1) {
            auto it = st.heightDist.find(m);
            cum += (it == st.heightDist.end()) ? 0 : it->second;
        }
        TruncatedSeries r = restricted_q_series(m, n);
        if (r.coeff(n) != cum) c.largestPartMatch = false;
    }

    c.symmetry = (st.heightDist == st.widthDist) && (st.widthDist == st.depthDist);

    mpq_class meanT = 0, meanX = 0;
    for (const auto& [v, cnt] : st.traceDist) meanT += mpq_class(v) * cnt;
    for (const auto& [v, cnt] : st.heightDist) meanX += mpq_class(v) * cnt;
    meanT /= st.count;
    meanX /= st.count;
    meanT.canonicalize();
    meanX.canonicalize();
    c.expectedTraceMatch = (meanT == expected_trace(n));
    c.expectedDimensionMatch = (meanX == expected_dimension(n));
    return c;
}

StatReport make_oracle_report(Engine& engine, const RunConfig& cfg) {
    StatReport rep;
    common_config(rep, "oracle", cfg);
    rep.config.emplace_back("n", std::to_string(cfg.n));

    if (cfg.n < 1 || cfg.n > kOracleMaxN)
        throw RangeError("oracle: n must be in [1, " + std::to_string(kOracleMaxN) + "]");
    OracleStats st = oracle_statistics(static_cast<int>(cfg.n));
    rep.columns = {"section", "key", "value"};
    rep.rows.push_back({"count", "", std::to_string(st.count)});
    auto emitDist = [&](const char* name, const std::map<int, long>& dist) {
        for (const auto& [v, cnt] : dist)
            rep.rows.push_back({name, std::to_string(v), std::to_string(cnt)});
    };
    emitDist("trace_dist", st.traceDist);
    emitDist("height_dist", st.heightDist);
    emitDist("width_dist", st.widthDist);
    emitDist("depth_dist", st.depthDist);

    OracleCrossCheck c = cross_check(engine, st);
    rep.rows.push_back({"verdict", "symmetry", verdict(c.symmetry)});
    rep.rows.push_back({"verdict", "count_vs_series", verdict(c.countMatch)});
    rep.rows.push_back({"verdict", "trace_dist_vs_series", verdict(c.traceMatch)});
    rep.rows.push_back({"verdict", "largest_part_dist_vs_series", verdict(c.largestPartMatch)});
    rep.rows.push_back({"verdict", "expected_trace_vs_series", verdict(c.expectedTraceMatch)});
    rep.rows.push_back({"verdict", "expected_dimension_vs_series", verdict(c.expectedDimensionMatch)});
    rep.rows.push_back({"verdict", "all", verdict(c.all())});
    return rep;
}

StatReport make_probe_report(Engine& engine, const RunConfig& cfg) {
    const int dd = out_digits(cfg);
    StatReport rep;
    common_config(rep, "probe", cfg);
    rep.config.emplace_back("n", std::to_string(cfg.n));
    rep.config.emplace_back("grid_size", std::to_string(cfg.gridSize));

    ProbeReport pr = engine.hayman_probe(cfg.n, cfg.gridSize);
    rep.columns = {"region", "index", "theta", "ratio", "log_ratio", "gaussian_log", "deviation"};
    for (size_t i = 0; i < pr.inside.size(); ++i) {
        const auto& row = pr.inside[i];
        rep.rows.push_back({"inside", std::to_string(i), row.theta.to_string(dd),
                            exp(row.logRatio).to_string(dd), row.logRatio.to_string(dd),
                            row.gaussianLog.to_string(dd), row.deviation.to_string(dd)});
    }
    for (size_t i = 0; i < pr.outside.size(); ++i) {
        const auto& row = pr.outside[i];
        rep.rows.push_back({"outside", std::to_string(i + 1), row.theta.to_string(dd),
                            exp(row.logRatio).to_string(dd), row.logRatio.to_string(dd), "", ""});
    }
    rep.meta.emplace_back("d", pr.d.to_string(dd));
    rep.meta.emplace_back("delta", pr.delta.to_string(dd));
    rep.meta.emplace_back("b", pr.b.to_string(dd));
    rep.meta.emplace_back("sqrt_b", pr.sqrtB.to_string(dd));
    rep.meta.emplace_back("inside_max_deviation", pr.insideMaxDeviation.to_string(dd));
    rep.meta.emplace_back("outside_max_log_ratio", pr.outsideMaxLogRatio.to_string(dd));
    rep.meta.emplace_back("outside_max_ratio", pr.outsideMaxRatio.to_string(dd));
    rep.meta.emplace_back("decay_statistic", pr.decayStatistic.to_string(dd));
    append_truncation_meta(rep, engine);
    return rep;
}

int run_selftest(Engine& engine, std::ostream& os) {
    bool allOk = true;
    for (int n = 1; n <= 12; ++n) {
        OracleStats st = oracle_statistics(n);
        OracleCrossCheck c = cross_check(engine, st);
        auto line = [&](const char* name, bool ok) {
            os << "selftest n=" << n << " " << name << " " << verdict(ok) << "\n";
            allOk = allOk && ok;
        };
        line("count_vs_series", c.countMatch);
        line("trace_dist_vs_series", c.traceMatch);
        line("largest_part_dist_vs_series", c.largestPartMatch);
        line("symmetry", c.symmetry);
        line("expected_trace_vs_series", c.expectedTraceMatch);
        line("expected_dimension_vs_series", c.expectedDimensionMatch);
    }
    os << "selftest overall " << verdict(allOk) << "\n";
    return allOk ? 0 : 3;
}

void emit_report(const StatReport& rep, const RunConfig& cfg, std::ostream& out) {
    std::ostringstream buf;
    if (cfg.format == "json")
        write_json(rep, buf);
    else
        write_csv(rep, buf);
    if (!cfg.outPath.empty()) {
        std::ofstream f(cfg.outPath, std::ios::binary);
        if (!f) throw ComputationError("cannot open output file: " + cfg.outPath);
        f << buf.str();
    } else {
        out << buf.str();
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"plane partition statistics: exact series, brute-force oracle, saddle-point asymptotics"};
    app.name("planestat");
    app.require_subcommand(1);

    RunConfig cfg;
    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("--precision", cfg.precision, "working precision in decimal digits")
            ->check(CLI::Range(30, 2000));
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.outPath, "write the report to this file");
    };

    CLI::App* cmdCount = app.add_subcommand("count", "exact q(n) vs Wright and Hayman estimates");
    cmdCount->add_option("--n-grid", cfg.nGrid, "comma-separated n values")->delimiter(',')->required();
    cmdCount->add_option("--max-n", cfg.maxN, "cap for exact computations");
    addCommon(cmdCount);

    CLI::App* cmdStat = app.add_subcommand("stat", "exact expectation vs saddle and asymptotic values");
    cmdStat->add_option("--statistic", cfg.statistic, "trace or dimension")
        ->check(CLI::IsMember({"trace", "dimension"}))
        ->required();
    cmdStat->add_option("--n-grid", cfg.nGrid, "comma-separated n values")->delimiter(',')->required();
    cmdStat->add_option("--max-n", cfg.maxN, "cap for exact computations");
    addCommon(cmdStat);

    CLI::App* cmdOracle = app.add_subcommand("oracle", "brute-force enumeration report with cross-checks");
    cmdOracle->add_option("--n", cfg.n, "partition size")->required();
    addCommon(cmdOracle);

    CLI::App* cmdProbe = app.add_subcommand("probe", "circle probes of locality and decay at the saddle");
    cmdProbe->add_option("--n", cfg.n, "partition size parameter")->required();
    cmdProbe->add_option("--grid-size", cfg.gridSize, "points per region")->check(CLI::Range(16, 100000));
    addCommon(cmdProbe);

    CLI::App* cmdSelftest = app.add_subcommand("selftest", "oracle-vs-series suite for n <= 12");
    addCommon(cmdSelftest);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        BigFloat::set_decimal_precision(cfg.precision);
        Engine engine(cfg.precision);
        sort_grid(cfg.nGrid);
        if (cmdCount->parsed()) {
            emit_report(make_count_report(engine, cfg, err), cfg, out);
        } else if (cmdStat->parsed()) {
            emit_report(make_stat_report(engine, cfg, err), cfg, out);
        } else if (cmdOracle->parsed()) {
            emit_report(make_oracle_report(engine, cfg), cfg, out);
        } else if (cmdProbe->parsed()) {
            emit_report(make_probe_report(engine, cfg), cfg, out);
        } else if (cmdSelftest->parsed()) {
            if (!cfg.outPath.empty()) {
                std::ofstream f(cfg.outPath, std::ios::binary);
                if (!f) throw ComputationError("cannot open output file: " + cfg.outPath);
                return run_selftest(engine, f);
            }
            return run_selftest(engine, out);
        }
        return 0;
    } catch (const ComputationError& e) {
        err << "computation error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "computation error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace planestat
