"""Monte Carlo payoff and CHSH estimates against their analytic values as the run count grows.

    python scripts/mc_convergence.py --seed 7
"""

import argparse

from eprgames.families import example_game
from eprgames.game import MixedStrategyPair, mixed_payoff
from eprgames.montecarlo import simulate
from eprgames.probability import chsh_delta_mu
from eprgames.quantum import born_distribution, max_chsh_config


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-exp", type=int, default=6, help="largest run count is 10**max_exp")
    args = ap.parse_args()

    dist = born_distribution(max_chsh_config(+1))
    game = example_game("A")
    pair = MixedStrategyPair(0.5, 0.5)
    pay_a, _ = mixed_payoff(game, dist, pair)
    delta = chsh_delta_mu(dist)
    print(f"analytic: payoff_A = {pay_a:.6f}, Delta = {delta:.6f}")
    print(f"{'n':>9} {'payoff_A':>10} {'stderr':>9} {'z':>6} {'Delta':>9}")
    for exp in range(2, args.max_exp + 1):
        s = simulate(game, dist, pair, n=10**exp, seed=args.seed)
        z = (s.payoff_mean[0] - pay_a) / s.payoff_stderr[0]
        d = s.empirical_delta()
        print(f"{10**exp:>9} {s.payoff_mean[0]:>10.5f} {s.payoff_stderr[0]:>9.2e} {z:>+6.2f} {d if d is not None else float('nan'):>9.5f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
