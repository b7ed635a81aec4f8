"""Ziegler-Nichols tuning experiment for the PID baseline.

The classical ultimate-gain recipe (raise kp until the loop first sustains an
oscillation) is ill-posed on the feedback-linearized channel: a pure double
integrator under proportional control oscillates without decay at *every*
gain, with period T = 2*pi/sqrt(kp).  This script demonstrates that, then
anchors the recipe on the one measurable datum it still offers: the gain Ku
whose sustained-oscillation period equals a chosen Tu.  With Tu = 2 s the
measured Ku is pi^2, and the classic Z-N PID table gives

    kp = 0.6 * Ku        ki = 2 * kp / Tu        kd = kp * Tu / 8

Run:  python3 scripts/zn_tune.py
"""

import math

DT = 0.01
TU_TARGET = 2.0          # anchor oscillation period [s]


def simulate_p_control(kp, n_steps=4000):
    """Closed loop: double integrator under pure P control, unit step reference.

    Returns (peak amplitudes, measured oscillation period).
    """
    x = v = 0.0
    ref = 1.0
    peaks, crossings = [], []
    e_prev = ref - x
    for k in range(n_steps):
        e = ref - x
        a = kp * e
        # symplectic-Euler step keeps the undamped oscillation neutral,
        # isolating the model property from integrator damping artifacts
        v += a * DT
        x += v * DT
        if e_prev >= 0.0 > e:
            crossings.append(k * DT)
        if abs(e) > abs(e_prev) and len(peaks) < 50:
            peaks.append(abs(e))
        e_prev = e
    # downward zero crossings of e happen once per full period
    period = ((crossings[-1] - crossings[0]) / (len(crossings) - 1)
              if len(crossings) > 1 else float("inf"))
    return peaks, period


def main():
    print("sustained-oscillation check (pure P on the linearized channel):")
    for kp in (1.0, 4.0, 9.87, 25.0):
        _, period = simulate_p_control(kp)
        print(f"  kp = {kp:6.2f}: oscillation period = {period:.3f} s "
              f"(theory 2*pi/sqrt(kp) = {2.0 * math.pi / math.sqrt(kp):.3f} s)"
              " -- no decay, no growth")
    print("=> no unique ultimate gain exists; every kp sustains an oscillation.")
    print(f"anchor: choose Ku so that the period equals Tu = {TU_TARGET} s")

    ku = (2.0 * math.pi / TU_TARGET) ** 2
    _, measured = simulate_p_control(ku)
    print(f"  Ku = (2*pi/Tu)^2 = {ku:.4f}; measured period = {measured:.3f} s")

    kp = 0.6 * ku
    ki = 2.0 * kp / TU_TARGET
    kd = kp * TU_TARGET / 8.0
    print("classic Ziegler-Nichols PID gains from (Ku, Tu):")
    print(f"  kp = {kp:.4f}")
    print(f"  ki = {ki:.4f}")
    print(f"  kd = {kd:.4f}")


if __name__ == "__main__":
    main()
