#include "battdispatch/characterization.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "battdispatch/electrochem.hpp"
#include "battdispatch/provenance.hpp"
#include "battdispatch/simplex.hpp"

namespace battd::charac {

using nlohmann::json;
namespace ec = battd::electrochem;

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Smallest nonnegative root of a*I^2 + b*I + c = 0, solved in the stable
// rationalized form. Degenerate a=0 falls back to the linear solution.
double smallest_nonneg_root(double a, double b, double c, const char* what) {
    constexpr double kNegTol = -1e-12;
    if (a == 0.0) {
        if (b == 0.0) {
            if (c == 0.0) return 0.0;
            throw NoRealRootError(std::string(what) + ": degenerate equation has no root", a, b, c);
        }
        const double r = -c / b;
        if (r < kNegTol)
            throw NoRealRootError(std::string(what) + ": linear root is negative", a, b, c);
        return std::max(r, 0.0);
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0)
        throw NoRealRootError(std::string(what) + ": negative discriminant " + std::to_string(disc),
                              a, b, c);
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    double r1, r2;
    if (q != 0.0) {
        r1 = q / a;
        r2 = c / q;
    } else {  // b == 0 and disc == 0
        r1 = r2 = 0.0;
    }
    double best = kInfinity;
    for (double r : {r1, r2}) {
        if (r >= kNegTol) best = std::min(best, std::max(r, 0.0));
    }
    if (best == kInfinity)
        throw NoRealRootError(std::string(what) + ": no nonnegative root", a, b, c);
    return best;
}

}  // namespace

CurrentLimit max_discharge_current(double soc, double T, const BatteryParams& p) {
    if (!(soc >= 0.0 && soc <= 1.0))
        throw ec::DomainError("max_discharge_current: soc outside [0,1]");
    const double r_dif = ec::diffusion_resistance(T, ec::DiffusionPath::electrode, p);
    const double a = -r_dif * p.eta_ci;
    const double b = -r_dif * (p.eta_c0 + p.eta_cT * T);
    const double c = soc;
    CurrentLimit lim;
    lim.i_root_A = smallest_nonneg_root(a, b, c, "discharge current limit");
    const double cap = p.c_rate_dis * p.nominal_current();
    if (cap < lim.i_root_A) {
        lim.i_max_A = cap;
        lim.capped = true;
    } else {
        lim.i_max_A = lim.i_root_A;
    }
    return lim;
}

CurrentLimit max_charge_current(double soc, double T, const BatteryParams& p) {
    if (!(soc >= 0.0 && soc <= 1.0))
        throw ec::DomainError("max_charge_current: soc outside [0,1]");
    const double r_dif = ec::diffusion_resistance(T, ec::DiffusionPath::electrode, p);
    // Signs chosen so that surface_soc(soc, -I, T) == 1 at the root: the
    // quadratic is in the current magnitude, with c = soc - 1.
    const double a = r_dif * p.eta_ci;
    const double b = r_dif * (p.eta_c0 + p.eta_cT * T);
    const double c = soc - 1.0;
    CurrentLimit lim;
    lim.i_root_A = smallest_nonneg_root(a, b, c, "charge current limit");
    const double cap = p.c_rate_cha * p.nominal_current();
    if (cap < lim.i_root_A) {
        lim.i_max_A = cap;
        lim.capped = true;
    } else {
        lim.i_max_A = lim.i_root_A;
    }
    return lim;
}

CurrentLimits current_limits(double soc, double T, const BatteryParams& p) {
    return {max_discharge_current(soc, T, p), max_charge_current(soc, T, p)};
}

PowerLimit max_power(double soc, double T, Mode mode, const BatteryParams& p) {
    PowerLimit out;
    out.current = mode == Mode::discharge ? max_discharge_current(soc, T, p)
                                          : max_charge_current(soc, T, p);
    const double i = out.current.i_max_A;
    const double v = ec::equilibrium_voltage(soc, T, p);
    const double r = ec::total_resistance(soc, T, p);
    if (mode == Mode::discharge) {
        const double pw = v * i - i * i * r;
        if (pw < 0.0) {  // voltage cut-off region
            out.p_max_W = 0.0;
            out.cutoff = true;
        } else {
            out.p_max_W = pw;
        }
    } else {
        out.p_max_W = v * i + i * i * r;
    }
    return out;
}

double efficiency(double soc, double i, double T, Mode mode, const BatteryParams& p) {
    if (!(i >= 0.0)) throw ec::DomainError("efficiency: current must be >= 0");
    const CurrentLimit lim = mode == Mode::discharge ? max_discharge_current(soc, T, p)
                                                     : max_charge_current(soc, T, p);
    if (i > lim.i_max_A * (1.0 + 1e-9) + 1e-9)
        throw ec::DomainError("efficiency: current exceeds the mode's limit");
    const double v = ec::equilibrium_voltage(soc, T, p);
    if (!(v > 0.0)) throw ec::DomainError("efficiency: non-positive equilibrium voltage");
    const double r = ec::total_resistance(soc, T, p);
    return mode == Mode::discharge ? 1.0 - i * r / v : v / (v + i * r);
}

InternalOperation terminal_to_internal(double soc, double p_terminal, double T, Mode mode,
                                       const BatteryParams& p) {
    if (!(p_terminal >= 0.0))
        throw InfeasiblePowerError("terminal_to_internal: negative terminal power");
    const PowerLimit lim = max_power(soc, T, mode, p);
    if (p_terminal > lim.p_max_W * (1.0 + 1e-9) + 1e-9)
        throw InfeasiblePowerError("terminal_to_internal: power " + std::to_string(p_terminal) +
                                   " W exceeds limit " + std::to_string(lim.p_max_W) + " W");
    InternalOperation op;
    if (p_terminal == 0.0) return op;
    const double v = ec::equilibrium_voltage(soc, T, p);
    const double r = ec::total_resistance(soc, T, p);
    if (mode == Mode::discharge) {
        // p = (v - i r) i; the smaller root is the physical branch.
        const double disc = std::max(v * v - 4.0 * r * p_terminal, 0.0);
        op.current_A = 2.0 * p_terminal / (v + std::sqrt(disc));
    } else {
        // p = (v + i r) i; single nonnegative root.
        op.current_A = 2.0 * p_terminal / (v + std::sqrt(v * v + 4.0 * r * p_terminal));
    }
    op.p_internal_W = v * op.current_A;
    return op;
}

ValidationReport validate_envelope(const EnvelopeSet& e, std::size_t min_samples) {
    ValidationReport r;
    auto fail = [&](const std::string& field, const std::string& msg) {
        r.issues.push_back({true, field, msg});
    };
    if (e.samples.size() < std::max<std::size_t>(min_samples, 2))
        fail("samples", "fewer than " + std::to_string(min_samples) + " samples");
    bool a0 = false, a1 = false;
    for (std::size_t i = 0; i < e.samples.size(); ++i) {
        const auto& s = e.samples[i];
        if (!(s.soc >= 0.0 && s.soc <= 1.0)) fail("samples", "soc outside [0,1]");
        if (s.p_terminal_W < 0.0 || s.p_internal_W < 0.0) fail("samples", "negative power");
        if (s.soc == 0.0 && s.p_terminal_W == 0.0 && s.p_internal_W == 0.0) a0 = true;
        if (s.soc == 1.0 && s.p_terminal_W == 0.0 && s.p_internal_W == 0.0) a1 = true;
        if (e.mode == Mode::discharge && s.p_internal_W < s.p_terminal_W - 1e-9)
            fail("samples", "discharge sample with p_internal < p_terminal");
        if (e.mode == Mode::charge && s.p_internal_W > s.p_terminal_W + 1e-9)
            fail("samples", "charge sample with p_internal > p_terminal");
        for (std::size_t k = i + 1; k < e.samples.size(); ++k) {
            const auto& o = e.samples[k];
            if (s.soc == o.soc && s.p_terminal_W == o.p_terminal_W) {
                fail("samples", "duplicate sample");
                break;
            }
        }
    }
    if (!a0) fail("samples", "missing anchor [0,0,0]");
    if (!a1) fail("samples", "missing anchor [1,0,0]");
    return r;
}

EnvelopeSet sample_surface(Mode mode, const Eigen::ArrayXd& soc_grid,
                           const Eigen::ArrayXd& power_fraction_grid, double T,
                           const BatteryParams& p) {
    if (soc_grid.size() == 0 || power_fraction_grid.size() == 0)
        throw ec::DomainError("sample_surface: empty grid");
    for (double s : soc_grid)
        if (!(s >= 0.0 && s <= 1.0)) throw ec::DomainError("sample_surface: soc grid outside [0,1]");
    for (double f : power_fraction_grid)
        if (!(f >= 0.0 && f <= 1.0))
            throw ec::DomainError("sample_surface: power fraction grid outside [0,1]");

    EnvelopeSet env;
    env.mode = mode;
    env.temperature_K = T;
    env.soc_grid = soc_grid;
    env.power_fraction_grid = power_fraction_grid;

    env.samples.push_back({0.0, 0.0, 0.0});
    env.samples.push_back({1.0, 0.0, 0.0});
    for (double soc : soc_grid) {
        PowerLimit lim;
        try {
            lim = max_power(soc, T, mode, p);
        } catch (const std::exception& e) {
            throw ec::DomainError("sample_surface: at soc=" + std::to_string(soc) + ": " +
                                  e.what());
        }
        for (double f : power_fraction_grid) {
            const double pt = f * lim.p_max_W;
            InternalOperation op;
            try {
                op = terminal_to_internal(soc, pt, T, mode, p);
            } catch (const std::exception& e) {
                throw ec::DomainError("sample_surface: at soc=" + std::to_string(soc) +
                                      " fraction=" + std::to_string(f) + ": " + e.what());
            }
            env.samples.push_back({soc, pt, op.p_internal_W});
        }
    }

    std::sort(env.samples.begin(), env.samples.end(), [](const auto& a, const auto& b) {
        if (a.soc != b.soc) return a.soc < b.soc;
        return a.p_terminal_W < b.p_terminal_W;
    });
    env.samples.erase(std::unique(env.samples.begin(), env.samples.end(),
                                  [](const auto& a, const auto& b) {
                                      return a.soc == b.soc && a.p_terminal_W == b.p_terminal_W;
                                  }),
                      env.samples.end());

    std::ostringstream prov;
    prov << mode_name(mode) << " surface @" << T << " K, soc{";
    for (int i = 0; i < soc_grid.size(); ++i) prov << (i ? "," : "") << soc_grid[i];
    prov << "} x fraction{";
    for (int i = 0; i < power_fraction_grid.size(); ++i)
        prov << (i ? "," : "") << power_fraction_grid[i];
    prov << "} plus anchors";
    env.provenance = prov.str();
    return env;
}

Eigen::ArrayXd default_soc_grid(Mode mode) {
    if (mode == Mode::discharge) {
        Eigen::ArrayXd g(2);
        g << 0.01, 1.0;
        return g;
    }
    Eigen::ArrayXd g(3);
    g << 0.01, 0.13, 0.95;
    return g;
}

Eigen::ArrayXd default_power_fraction_grid(Mode) {
    Eigen::ArrayXd g(6);
    g << 1.0 / 6, 2.0 / 6, 3.0 / 6, 4.0 / 6, 5.0 / 6, 1.0;
    return g;
}

EnvelopeSet default_envelope(Mode mode, double T, const BatteryParams& p) {
    return sample_surface(mode, default_soc_grid(mode), default_power_fraction_grid(mode), T, p);
}

// Linear program over the sample weights: reproduce (soc, p_terminal) as a
// convex combination and push p_internal to the economically active face
// (minimum for discharge, maximum for charge).
static bool envelope_interpolate(const EnvelopeSet& env, double soc, double p_terminal,
                                 double* value) {
    optim::LinearProgram lp;
    const int n = static_cast<int>(env.samples.size());
    const double sign = env.mode == Mode::discharge ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j)
        lp.add_variable("w" + std::to_string(j), 0.0, 1.0, sign * env.samples[j].p_internal_W);
    const int r_sum = lp.add_constraint("sum", optim::Sense::eq, 1.0);
    const int r_soc = lp.add_constraint("soc", optim::Sense::eq, soc);
    const int r_pow = lp.add_constraint("power", optim::Sense::eq, p_terminal);
    for (int j = 0; j < n; ++j) {
        lp.add_coeff(r_sum, j, 1.0);
        lp.add_coeff(r_soc, j, env.samples[j].soc);
        lp.add_coeff(r_pow, j, env.samples[j].p_terminal_W);
    }
    optim::SimplexOptions opt;
    const auto sol = optim::solve_lp(lp, opt);
    if (sol.status != optim::SolveStatus::optimal) return false;
    *value = sign * sol.objective;
    return true;
}

ErrorReport envelope_error(const EnvelopeSet& envelope, double T, const BatteryParams& p,
                           int n_soc, int n_power) {
    ErrorReport rep;
    std::ostringstream grid;
    grid << n_soc << "x" << n_power << " (soc x power fraction of the exact limit)";
    rep.evaluation_grid = grid.str();

    double p_scale = 0.0;
    for (const auto& s : envelope.samples) p_scale = std::max(p_scale, s.p_internal_W);
    const double denom_floor = std::max(1e-9 * p_scale, 1e-12);

    double sum = 0.0, sumsq = 0.0;
    std::size_t n = 0;
    for (int a = 0; a < n_soc; ++a) {
        const double soc = n_soc == 1 ? 0.5 : static_cast<double>(a) / (n_soc - 1);
        const PowerLimit lim = max_power(soc, T, envelope.mode, p);
        for (int b = 0; b < n_power; ++b) {
            const double frac = n_power == 1 ? 1.0 : static_cast<double>(b) / (n_power - 1);
            const double pt = frac * lim.p_max_W;
            double env_val;
            if (!envelope_interpolate(envelope, soc, pt, &env_val)) {
                ++rep.n_outside_hull;
                continue;
            }
            const double exact = terminal_to_internal(soc, pt, T, envelope.mode, p).p_internal_W;
            const double rel = std::abs(env_val - exact) / std::max(std::abs(exact), denom_floor);
            rep.max_rel_error = std::max(rep.max_rel_error, rel);
            sum += rel;
            sumsq += rel * rel;
            ++n;
        }
    }
    rep.n_samples = n;
    if (n > 0) {
        rep.mean_rel_error = sum / n;
        const double var = std::max(0.0, sumsq / n - rep.mean_rel_error * rep.mean_rel_error);
        rep.std_rel_error = std::sqrt(var);
    }
    return rep;
}

std::string envelope_to_json_text(const EnvelopeSet& e) {
    json j;
    j["mode"] = mode_name(e.mode);
    j["temperature_K"] = e.temperature_K;
    j["provenance"] = e.provenance;
    j["soc_grid"] = std::vector<double>(e.soc_grid.data(), e.soc_grid.data() + e.soc_grid.size());
    j["power_fraction_grid"] = std::vector<double>(
        e.power_fraction_grid.data(), e.power_fraction_grid.data() + e.power_fraction_grid.size());
    json arr = json::array();
    for (const auto& s : e.samples)
        arr.push_back({{"soc", s.soc}, {"p_terminal_W", s.p_terminal_W},
                       {"p_internal_W", s.p_internal_W}});
    j["samples"] = arr;
    return j.dump(2) + "\n";
}

EnvelopeSet envelope_from_json_text(const std::string& text) {
    json j = json::parse(text);
    EnvelopeSet e;
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "discharge") e.mode = Mode::discharge;
    else if (mode == "charge") e.mode = Mode::charge;
    else throw ec::DomainError("envelope file: unknown mode " + mode);
    e.temperature_K = j.at("temperature_K").get<double>();
    e.provenance = j.value("provenance", "");
    const auto sg = j.value("soc_grid", std::vector<double>{});
    const auto pg = j.value("power_fraction_grid", std::vector<double>{});
    e.soc_grid = Eigen::Map<const Eigen::ArrayXd>(sg.data(), sg.size());
    e.power_fraction_grid = Eigen::Map<const Eigen::ArrayXd>(pg.data(), pg.size());
    for (const auto& s : j.at("samples")) {
        e.samples.push_back({s.at("soc").get<double>(), s.at("p_terminal_W").get<double>(),
                             s.at("p_internal_W").get<double>()});
    }
    return e;
}

void save_envelope(const EnvelopeSet& e, const std::string& path) {
    write_file(path, envelope_to_json_text(e));
}

EnvelopeSet load_envelope(const std::string& path) {
    return envelope_from_json_text(read_file(path));
}

}  // namespace battd::charac
