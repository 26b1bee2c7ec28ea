"""
Finding high-characteristic nodes through neighbours
=====================================================

Pick random nodes (control), a random neighbour of each (friend) and the
best neighbour of each (biased).  Compare the groups as the correlation
between degree and the characteristic varies.
"""

# %%
import numpy as np

from gfparadox import (SynthesisSpec, barabasi_albert_graph, group_summary, sample_groups,
                       synthesize_correlated)

g = barabasi_albert_graph(10_000, 3, seed=7)

# %%
# Mean characteristic per group, averaged over 50 configurations per rho.
print(f"{'rho':>4} {'control':>8} {'friend':>8} {'biased':>8}")
for rho in np.round(np.arange(0.1, 1.0, 0.2), 1):
    means = []
    for seed in range(50):
        x = synthesize_correlated(g, SynthesisSpec(rho, seed))
        grp = sample_groups(g, x, 5000, seed)
        means.append([x.values[grp[k]].mean() for k in ("control", "friend", "biased")])
    c, f, b = np.mean(means, axis=0)
    print(f"{rho:4.1f} {c:8.2f} {f:8.2f} {b:8.2f}")

# %%
# Tails: share of each group above the population's 99th percentile.
x = synthesize_correlated(g, SynthesisSpec(0.5, 11))
summaries = group_summary(sample_groups(g, x, 5000, seed=11), x, include_population=True)
cut = np.quantile(x.values, 0.99)
for name, s in summaries.items():
    tail = np.interp(cut, s.ccdf_x, s.ccdf_p)
    print(f"{name:>8}: mean {s.mean:6.2f}  median {s.median:6.2f}  P(X >= {cut:.1f}) = {tail:.3f}")
