#include "hoplink/run.hpp"

#include "hoplink/covert.hpp"
#include "hoplink/parallel.hpp"
#include "hoplink/secrecy.hpp"
#include "hoplink/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

namespace hoplink {

namespace {

double vec_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double vec_min(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double vec_max(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

const std::vector<std::string> kSecrecyColumns = {
    "hops", "zeta", "power_total_w", "uav_height_m",
    "gamma_e", "rate_tx", "rate_secret", "rate_redundancy",
    "p_connect", "p_secrecy_outage", "throughput", "a1",
    "power_avg_w", "power_min_w", "power_max_w",
    "eq_power_w", "eq_gamma_e", "eq_rate_tx", "eq_rate_secret",
    "eq_p_connect", "eq_throughput"};

const std::vector<std::string> kCovertColumns = {
    "hops", "epsilon", "power_total_w", "uav_height_m",
    "rate_tx", "p_connect", "kl_bound", "kl_budget", "throughput", "a2",
    "lambda_kl", "mu_pow",
    "power_avg_w", "power_min_w", "power_max_w",
    "eq_power_w", "eq_rate_tx", "eq_p_connect", "eq_throughput"};

void push_secrecy_row(Table& t, const Scenario& sc, double zeta, double power_total,
                      const secrecy::Solution& opt, const secrecy::Solution& eq) {
    auto& row = t.add_row();
    row.emplace_back(static_cast<std::int64_t>(opt.hops));
    row.emplace_back(zeta);
    row.emplace_back(power_total);
    row.emplace_back(sc.uav_height);
    row.emplace_back(opt.gamma_e);
    row.emplace_back(opt.rate_tx);
    row.emplace_back(opt.rate_secret);
    row.emplace_back(opt.rate_redundancy);
    row.emplace_back(opt.p_connect);
    row.emplace_back(opt.p_secrecy_outage);
    row.emplace_back(opt.throughput);
    row.emplace_back(opt.a1);
    row.emplace_back(vec_sum(opt.powers) / opt.hops);
    row.emplace_back(vec_min(opt.powers));
    row.emplace_back(vec_max(opt.powers));
    row.emplace_back(eq.powers.front());
    row.emplace_back(eq.gamma_e);
    row.emplace_back(eq.rate_tx);
    row.emplace_back(eq.rate_secret);
    row.emplace_back(eq.p_connect);
    row.emplace_back(eq.throughput);
}

void push_covert_row(Table& t, const Scenario& sc, double epsilon, double power_total,
                     const covert::Solution& opt, const covert::Solution& eq) {
    auto& row = t.add_row();
    row.emplace_back(static_cast<std::int64_t>(opt.hops));
    row.emplace_back(epsilon);
    row.emplace_back(power_total);
    row.emplace_back(sc.uav_height);
    row.emplace_back(opt.rate_tx);
    row.emplace_back(opt.p_connect);
    row.emplace_back(opt.kl_bound);
    row.emplace_back(2.0 * epsilon * epsilon);
    row.emplace_back(opt.throughput);
    row.emplace_back(opt.a2);
    row.emplace_back(opt.lambda_kl);
    row.emplace_back(opt.mu_pow);
    row.emplace_back(vec_sum(opt.powers) / opt.hops);
    row.emplace_back(vec_min(opt.powers));
    row.emplace_back(vec_max(opt.powers));
    row.emplace_back(eq.powers.front());
    row.emplace_back(eq.rate_tx);
    row.emplace_back(eq.p_connect);
    row.emplace_back(eq.throughput);
}

Table per_hop_table(const Scenario& sc, const std::vector<HopChannel>& channels,
                    const std::vector<double>& powers, const std::vector<double>& eq_powers) {
    Table t;
    t.name = "per_hop";
    t.columns = {"hop", "position_m", "dist_uav_m", "elevation_deg", "p_los",
                 "secrecy_coeff", "covert_coeff", "power_w", "eq_power_w"};
    for (std::size_t i = 0; i < channels.size(); ++i) {
        auto& row = t.add_row();
        row.emplace_back(static_cast<std::int64_t>(channels[i].index));
        row.emplace_back(transmitter_position(sc, channels[i].index));
        row.emplace_back(channels[i].dist_uav);
        row.emplace_back(channels[i].elevation_deg);
        row.emplace_back(channels[i].p_los);
        row.emplace_back(channels[i].secrecy_coeff);
        row.emplace_back(channels[i].covert_coeff);
        row.emplace_back(powers[i]);
        row.emplace_back(eq_powers[i]);
    }
    return t;
}

} // namespace

std::vector<Table> solve_tables(const RunConfig& cfg) {
    const Scenario& sc = cfg.scenario;
    const auto channels = hop_channels(sc);
    Table result;
    result.name = "result";
    std::vector<Table> out;
    if (cfg.secrecy_problem()) {
        const secrecy::Constraints cs{*cfg.zeta, cfg.power_total};
        const auto opt = secrecy::evaluate(sc, channels, cs);
        const auto eq = secrecy::evaluate_equal_power(sc, channels, cs);
        result.columns = kSecrecyColumns;
        push_secrecy_row(result, sc, cs.zeta, cs.power_total, opt, eq);
        out.push_back(std::move(result));
        out.push_back(per_hop_table(sc, channels, opt.powers, eq.powers));
    } else {
        const covert::Constraints cs{*cfg.epsilon, cfg.power_total};
        const auto opt = covert::evaluate(sc, channels, cs);
        const auto eq = covert::evaluate_equal_power(sc, channels, cs);
        result.columns = kCovertColumns;
        push_covert_row(result, sc, cs.epsilon, cs.power_total, opt, eq);
        out.push_back(std::move(result));
        out.push_back(per_hop_table(sc, channels, opt.powers, eq.powers));
    }
    return out;
}

Table sweep_table(const RunConfig& cfg, int threads) {
    const SweepSpec& sp = *cfg.sweep;
    const std::vector<double> grid = sweep_grid(sp);
    const bool is_secrecy = cfg.secrecy_problem();

    Table t;
    t.name = "sweep";
    t.columns = is_secrecy ? kSecrecyColumns : kCovertColumns;

    struct Point {
        Scenario sc;
        double budget;
    };
    std::vector<Point> points;
    points.reserve(grid.size());
    for (double v : grid) {
        Point p{cfg.scenario, is_secrecy ? *cfg.zeta : *cfg.epsilon};
        switch (sp.variable) {
            case SweepVariable::zeta:
            case SweepVariable::epsilon: p.budget = v; break;
            case SweepVariable::height: p.sc.uav_height = v; break;
            case SweepVariable::hops: p.sc.hops = static_cast<int>(v); break;
        }
        points.push_back(p);
    }

    // Evaluate grid points concurrently, then emit rows in grid order.
    std::vector<std::pair<secrecy::Solution, secrecy::Solution>> sec_rows;
    std::vector<std::pair<covert::Solution, covert::Solution>> cov_rows;
    if (is_secrecy) sec_rows.resize(points.size()); else cov_rows.resize(points.size());

    parallel_chunks(static_cast<std::int64_t>(points.size()), threads,
                    [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const Point& p = points[static_cast<std::size_t>(i)];
            const auto channels = hop_channels(p.sc);
            if (is_secrecy) {
                const secrecy::Constraints cs{p.budget, cfg.power_total};
                sec_rows[static_cast<std::size_t>(i)] = {
                    secrecy::evaluate(p.sc, channels, cs),
                    secrecy::evaluate_equal_power(p.sc, channels, cs)};
            } else {
                const covert::Constraints cs{p.budget, cfg.power_total};
                cov_rows[static_cast<std::size_t>(i)] = {
                    covert::evaluate(p.sc, channels, cs),
                    covert::evaluate_equal_power(p.sc, channels, cs)};
            }
        }
    });

    for (std::size_t i = 0; i < points.size(); ++i) {
        if (is_secrecy)
            push_secrecy_row(t, points[i].sc, points[i].budget, cfg.power_total,
                             sec_rows[i].first, sec_rows[i].second);
        else
            push_covert_row(t, points[i].sc, points[i].budget, cfg.power_total,
                            cov_rows[i].first, cov_rows[i].second);
    }
    return t;
}

namespace {

void push_check(Table& t, const std::string& check, const std::string& detail,
                double closed_form, double oracle, double half_width,
                std::int64_t trials, bool pass) {
    auto& row = t.add_row();
    row.emplace_back(check);
    row.emplace_back(detail);
    row.emplace_back(closed_form);
    row.emplace_back(oracle);
    row.emplace_back(half_width);
    row.emplace_back(trials);
    row.emplace_back(pass);
}

} // namespace

Table validate_table(const RunConfig& cfg, std::uint64_t seed, int threads) {
    const Scenario& sc = cfg.scenario;
    const auto channels = hop_channels(sc);
    const std::int64_t trials = cfg.mc.trials;

    Table t;
    t.name = "validate";
    t.columns = {"check", "detail", "closed_form", "oracle", "half_width_95", "trials",
                 "pass"};

    if (cfg.secrecy_problem()) {
        const secrecy::Constraints cs{*cfg.zeta, cfg.power_total};
        const auto sol = secrecy::evaluate(sc, channels, cs);

        // Allocation certificate: both constraints active.
        const double power_residual =
            std::abs(vec_sum(sol.powers) - cs.power_total) / cs.power_total;
        double outage_sum = 0.0;
        for (std::size_t i = 0; i < channels.size(); ++i)
            outage_sum += std::exp(-sol.gamma_e * channels[i].secrecy_coeff / sol.powers[i]);
        const double outage_residual = std::abs(outage_sum - cs.zeta) / cs.zeta;
        push_check(t, "power_budget_active", "relative residual of sum p_n = P_T",
                   power_residual, 0.0, 0.0, 0, power_residual <= 1e-9);
        push_check(t, "outage_budget_active", "relative residual of outage sum = zeta",
                   outage_residual, 0.0, 0.0, 0, outage_residual <= 1e-9);

        // Closed-form connection probability against the sampled estimate.
        const auto mc = sim::mc_connection(sc, sol.powers, sol.rate_tx, trials, seed, threads);
        push_check(t, "connection_probability", "closed form vs Monte Carlo",
                   sol.p_connect, mc.value, mc.half_width_95, mc.trials,
                   std::abs(sol.p_connect - mc.value) <= 3.0 * mc.half_width_95);

        // The smoothed outage never exceeds the exact mixture outage.
        const auto mso = sim::mc_secrecy_outage(sc, sol.powers, sol.rate_redundancy,
                                                trials, seed, threads);
        push_check(t, "secrecy_outage_bound", "smoothed closed form <= exact Monte Carlo",
                   sol.p_secrecy_outage, mso.value, mso.half_width_95, mso.trials,
                   sol.p_secrecy_outage <= mso.value + 3.0 * mso.half_width_95);
    } else {
        const covert::Constraints cs{*cfg.epsilon, cfg.power_total};
        const auto sol = covert::evaluate(sc, channels, cs);
        const double budget = 2.0 * cs.epsilon * cs.epsilon;

        // KKT certificate in normalized form.
        double stat_residual = 0.0;
        for (std::size_t i = 0; i < channels.size(); ++i) {
            const double p = sol.powers[i];
            stat_residual = std::max(
                stat_residual, std::abs(2.0 * sol.lambda_kl * channels[i].covert_coeff * p * p * p +
                                        sol.mu_pow * p * p - 1.0));
        }
        push_check(t, "kkt_stationarity", "max |2 lam c p^3 + mu p^2 - 1|", stat_residual,
                   0.0, 0.0, 0, stat_residual <= 1e-8);
        push_check(t, "kl_budget", "quadratic bound <= 2 eps^2", sol.kl_bound, budget, 0.0,
                   0, sol.kl_bound <= budget * (1.0 + 1e-8));
        push_check(t, "power_budget", "sum p_n <= P_T", vec_sum(sol.powers), cs.power_total,
                   0.0, 0, vec_sum(sol.powers) <= cs.power_total * (1.0 + 1e-8));

        // Divergence chain: quadrature value per hop under the quadratic bound.
        for (std::size_t i = 0; i < channels.size(); ++i) {
            const double bound = channels[i].covert_coeff * sol.powers[i] * sol.powers[i];
            const double exact = sim::true_kl_per_hop(sc, sol.powers[i],
                                                      static_cast<int>(i) + 1);
            push_check(t, "kl_chain_hop_" + std::to_string(i + 1),
                       "quadrature divergence <= c_n p_n^2", bound, exact, 0.0, 0,
                       exact <= bound * (1.0 + 1e-8));
        }

        // Detection-error floor via the likelihood-ratio observer.
        const auto det = sim::warden_detection_error(sc, sol.powers, trials, seed, threads);
        push_check(t, "detection_error_floor", "min(P_FA + P_MD) >= 1 - eps",
                   1.0 - cs.epsilon, det.value, det.half_width_95, det.trials,
                   det.value >= 1.0 - cs.epsilon - 3.0 * det.half_width_95);

        // Closed-form connection probability against the sampled estimate.
        const auto mc = sim::mc_connection(sc, sol.powers, sol.rate_tx, trials, seed, threads);
        push_check(t, "connection_probability", "closed form vs Monte Carlo",
                   sol.p_connect, mc.value, mc.half_width_95, mc.trials,
                   std::abs(sol.p_connect - mc.value) <= 3.0 * mc.half_width_95);
    }
    return t;
}

int run(const RunConfig& cfg, const RunOptions& opts, std::ostream& stdout_stream,
        std::ostream& stderr_stream) {
    RunConfig effective = cfg;
    if (opts.seed) effective.mc.seed = *opts.seed;
    if (opts.out_path) effective.output.path = *opts.out_path;
    if (opts.format) effective.output.format = *opts.format;

    if (opts.emit_resolved) {
        std::ofstream res(*opts.emit_resolved, std::ios::binary);
        if (!res) {
            stderr_stream << "hoplink: cannot write resolved config to '"
                          << *opts.emit_resolved << "'\n";
            return 1;
        }
        res << resolved_json(effective).dump(2) << '\n';
    }

    std::vector<Table> tables;
    try {
        switch (effective.mode) {
            case Mode::secrecy:
            case Mode::covert:
                tables = solve_tables(effective);
                break;
            case Mode::sweep:
                tables.push_back(sweep_table(effective, opts.threads));
                break;
            case Mode::validate:
                tables.push_back(validate_table(effective, effective.mc.seed, opts.threads));
                break;
        }
    } catch (const InfeasibleError& e) {
        stderr_stream << "hoplink: infeasible: " << e.what() << '\n';
        return 2;
    }

    std::ofstream file;
    std::ostream* os = &stdout_stream;
    if (!effective.output.path.empty()) {
        file.open(effective.output.path, std::ios::binary);
        if (!file) {
            stderr_stream << "hoplink: cannot open output '" << effective.output.path
                          << "'\n";
            return 1;
        }
        os = &file;
    }
    if (effective.output.format == OutputFormat::csv) {
        write_csv(*os, tables);
    } else {
        *os << to_json(tables).dump(2) << '\n';
    }
    os->flush();

    // Validation failures flag through the exit code as well.
    if (effective.mode == Mode::validate) {
        const Table& t = tables.front();
        const int pass_idx = t.column_index("pass");
        for (const auto& row : t.rows)
            if (!std::get<bool>(row[static_cast<std::size_t>(pass_idx)])) return 3;
    }
    return 0;
}

} // namespace hoplink
