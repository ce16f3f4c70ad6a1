"""
Mean square of smoothed Mobius sums
===================================

S(X, Y) sums, over odd square-free d near X, the square of a smoothed
sum of mu(n) (8d/n) over n near Y.  Against the predicted main term the
ratio drifts towards 1 as X grows.  Takes a few seconds.
"""

from qtlab.meansquare import ExperimentConfig, YRule, run_experiment

cfg = ExperimentConfig(X_values=(1e3, 1e4, 1e5), Y_rule=YRule("power", 0.5), thread_count=4)
for r in run_experiment(cfg):
    print(f"X={r.X:8.0f}  Y={r.Y:7.1f}  S={r.s_empirical:12.6f}  main={r.s_predicted:12.6f}  ratio={r.ratio:.4f}")

# the same sweep with the unsquared Phi integral shows a ratio near 2
lit = ExperimentConfig(X_values=(1e5,), main_functional="literal")
print("literal functional, X=1e5: ratio", round(run_experiment(lit)[0].ratio, 4))
