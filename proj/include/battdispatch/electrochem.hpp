#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "battdispatch/battery.hpp"
#include "battdispatch/constants.hpp"

// Steady-state equivalent-circuit evaluation: equilibrium voltage,
// resistive elements, coulombic efficiency and surface state of charge,
// all pure functions of (soc, T, i) and the parameter set. The scalar
// type is a template parameter so the same kernels run in double for the
// library and in long double where tests want extra head-room.

namespace battd::electrochem {

class DomainError : public std::domain_error {
    using std::domain_error::domain_error;
};
class SingularityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class DiffusionPath { membrane, electrode };

// Molar fractions stay strictly inside (0,1) for soc in (0,1); the
// boundary values chi_and=1 (soc=1) and chi_ctd=1 (soc=0) make the
// Nernst term singular downstream, hence the boundary flag.
template <typename Scalar>
struct MolarFractions {
    Scalar chi_and;
    Scalar chi_ctd;
    bool on_boundary;
};

template <typename Scalar>
MolarFractions<Scalar> molar_fractions(Scalar soc) {
    if (!(soc >= Scalar(0) && soc <= Scalar(1)))
        throw DomainError("molar_fractions: soc outside [0,1]");
    const Scalar chi_and = Scalar(0.083) + Scalar(0.917) * soc;
    const Scalar chi_ctd = Scalar(1) - Scalar(0.7) * soc;
    const bool boundary = (soc == Scalar(0) || soc == Scalar(1));
    return {chi_and, chi_ctd, boundary};
}

// chi values are pulled into [eps, 1-eps] before any log, power or
// denominator use; the model is only evaluated at interior SOC.
inline constexpr double kChiClamp = 1e-6;

template <typename Scalar>
Scalar clamp_chi(Scalar chi) {
    const Scalar lo = Scalar(kChiClamp);
    const Scalar hi = Scalar(1) - Scalar(kChiClamp);
    return chi < lo ? lo : (chi > hi ? hi : chi);
}

// Seventh-order Redlich-Kister sum for one electrode, in volts.
// Evaluated with the exponent rewritten as (2chi-1)^(k-2) so nothing is
// divided by (2chi-1); at chi=1/2 only the k=2 term survives, giving the
// analytic limit -2*chi*(1-chi)*A_2 / F.
template <typename Scalar>
Scalar redlich_kister(Scalar chi, std::span<const double, 7> coeffs) {
    if (!(chi > Scalar(0) && chi < Scalar(1)))
        throw DomainError("redlich_kister: chi outside (0,1)");
    const Scalar u = Scalar(2) * chi - Scalar(1);
    const Scalar w = Scalar(2) * chi * (Scalar(1) - chi);
    Scalar sum = Scalar(coeffs[0]) * u;  // k=1: second part carries (k-1)=0
    Scalar u_km2 = Scalar(1);            // u^(k-2), starting at k=2
    for (int k = 2; k <= 7; ++k) {
        const Scalar a = Scalar(coeffs[k - 1]);
        sum += a * (u_km2 * (u * u - w * Scalar(k - 1)));
        u_km2 *= u;
    }
    return sum / Scalar(kFaraday);
}

// Equilibrium voltage, Nernst term plus the two interaction polynomials.
template <typename Scalar>
Scalar equilibrium_voltage(Scalar soc, Scalar T, const BatteryParams& p) {
    if (!(T > Scalar(0))) throw DomainError("equilibrium_voltage: T must be positive");
    const auto chi = molar_fractions(soc);
    const Scalar chi_and = clamp_chi(chi.chi_and);
    const Scalar chi_ctd = clamp_chi(chi.chi_ctd);
    const Scalar arg = (Scalar(1) - chi_ctd) * chi_and / (chi_ctd * (Scalar(1) - chi_and));
    if (!(arg > Scalar(0)))
        throw SingularityError("equilibrium_voltage: non-positive Nernst argument");
    const Scalar nernst = Scalar(kGasConstant) * T / Scalar(kFaraday) * std::log(arg);
    const Scalar v_int = redlich_kister(chi_ctd, std::span<const double, 7>(p.A_ctd)) -
                         redlich_kister(chi_and, std::span<const double, 7>(p.A_and));
    return Scalar(p.U_bat0) + nernst + v_int;
}

template <typename Scalar>
Scalar ohmic_resistance(Scalar soc, Scalar T, const BatteryParams& p) {
    if (!(soc >= Scalar(0) && soc <= Scalar(1)))
        throw DomainError("ohmic_resistance: soc outside [0,1]");
    return Scalar(p.R_ohm_0) + Scalar(p.R_ohm_T) * T + Scalar(p.R_ohm_SOC) * soc;
}

template <typename Scalar>
Scalar charge_transfer_resistance(Scalar soc, Scalar T, const BatteryParams& p) {
    const auto chi = molar_fractions(soc);
    const Scalar chi_and = clamp_chi(chi.chi_and);
    const Scalar chi_ctd = clamp_chi(chi.chi_ctd);
    const Scalar prod = chi_and * chi_ctd;
    if (!(prod > Scalar(0)))
        throw SingularityError("charge_transfer_resistance: chi product not positive");
    const Scalar ea_joule = Scalar(p.E_A) * Scalar(1000);  // kJ/mol -> J/mol
    const Scalar core = Scalar(kGasConstant) * T * std::exp(ea_joule / (Scalar(kGasConstant) * T)) /
                        (Scalar(kFaraday) * Scalar(kFaraday) * Scalar(p.A_SEI) * Scalar(p.k_0));
    return core / std::sqrt(prod);
}

template <typename Scalar>
Scalar diffusion_resistance(Scalar T, DiffusionPath which, const BatteryParams& p) {
    const Scalar K = Scalar(which == DiffusionPath::membrane ? p.K_dif_mem : p.K_dif_elec);
    const Scalar b = Scalar(which == DiffusionPath::membrane ? p.b_dif_mem : p.b_dif_elec);
    const Scalar T0 = Scalar(which == DiffusionPath::membrane ? p.T0_dif_mem : p.T0_dif_elec);
    if (T == T0) throw SingularityError("diffusion_resistance: T equals T0 for selected path");
    return K * std::exp(b / (T - T0));
}

// R_tot = R_ohm + R_ct + R_dif,mem (electrode diffusion acts on surface
// SOC, not as a series voltage drop).
template <typename Scalar>
Scalar total_resistance(Scalar soc, Scalar T, const BatteryParams& p) {
    return ohmic_resistance(soc, T, p) + charge_transfer_resistance(soc, T, p) +
           diffusion_resistance(T, DiffusionPath::membrane, p);
}

// i is a magnitude here.
template <typename Scalar>
Scalar coulombic_efficiency(Scalar i, Scalar T, const BatteryParams& p) {
    if (!(i >= Scalar(0))) throw DomainError("coulombic_efficiency: current must be >= 0");
    return Scalar(p.eta_c0) + Scalar(p.eta_cT) * T + Scalar(p.eta_ci) * i;
}

// Signed current: positive discharges (surface SOC drops below bulk),
// negative charges. The result may leave [0,1]; bounding it is the
// caller's constraint, not this function's.
template <typename Scalar>
Scalar surface_soc(Scalar soc, Scalar i_signed, Scalar T, const BatteryParams& p) {
    const Scalar r_dif = diffusion_resistance(T, DiffusionPath::electrode, p);
    const Scalar eta = coulombic_efficiency(std::abs(i_signed), T, p);
    return soc - r_dif * i_signed * eta;
}

}  // namespace battd::electrochem
