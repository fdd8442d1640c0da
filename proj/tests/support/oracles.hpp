#pragma once

// Reference values frozen from tests/oracles/compute_oracles.py (mpmath, 30
// digits, independent Liouvillian and eigenvalue-based concurrence).

namespace sqbath::oracles {

// N = 0, psi1(0.28): t e^{-t} = eps / sqrt(1 - eps^2).
inline constexpr double kPsi1K028 = 0.29166666666666667;
inline constexpr double kPsi1Death028 = 0.46376382317642388;
inline constexpr double kPsi1Revival028 = 1.8441765386272164;
inline constexpr double kPsi1CriticalEps = 0.34525776171161968;

// N = 0, psi2: touching time ln((1 - eps^2) / eps^2) / 2.
inline constexpr double kTouching05 = 0.54930614433405485;
inline constexpr double kTouching03 = 1.1568174645903153;

// N = 0, phi4 at t = 1, DFS diagonal.
inline constexpr double kPhi4N0T1[4] = {0.59399415029016192, 0.0, 0.27067056647322538,
                                        0.13533528323661269};

inline constexpr double kPsi1Rho14T2 = 0.036378124134001492;      // psi1(0.28), N = 0, t = 2
inline constexpr double kPsi1Eps05Rho33T1 = 0.20300292485491904;  // psi1(0.5), N = 0, t = 1
inline constexpr double kRho23Example = 0.067667641618306346;     // 0.5 e^{-2}
inline constexpr double kPsi1C0028 = 0.53760000000000000;         // C(psi1(0.28)) at t = 0

// Concurrence of psi1(0.28) at N = 0.
inline constexpr double kPsi1C028T02 = 0.19304287108414498;
inline constexpr double kPsi1C028T05 = 0.0;  // inside the dead interval

// phi3 at N > 0: one death then one revival.
struct EventPair {
  double n_bar;
  double death;
  double revival;
};
inline constexpr EventPair kPhi3Events[3] = {
    {0.1, 1.0239327500658995, 1.4437861009337773},
    {0.5, 0.65695185915524448, 1.7752559522198773},
    {1.0, 0.46714768466201733, 2.3289659952625080},
};

// psi2(0.54) at N = 0.1.
inline constexpr double kPsi2054Deaths[2] = {0.23943069436101695, 2.1550718499491430};
inline constexpr double kPsi2054Revivals[2] = {0.81528176593627990, 3.0195819335496273};

// Maximum of the phi4 death time over N.
inline constexpr double kPhi4DeathMaxN = 0.41207959229244267;
inline constexpr double kPhi4DeathMaxValue = 0.36970883151712627;

}  // namespace sqbath::oracles
