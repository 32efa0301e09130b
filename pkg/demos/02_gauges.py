# coding: utf-8

# # Gauges of product sets

# A product set gives one real body per idempotent slot. Its gauge is
# computed slot by slot: a closed form for norm balls, a small LP for hulls.

# In[1]:

import numpy as np

from bihyp import HVector, h2_gauge, set_from_json
from bihyp.gauge import gauge_bisection, real_gauge
from bihyp.sets import PolytopeHull


# In[2]:

S = set_from_json({
    "product": [
        {"ball": {"p": 2, "r": 1.0}},
        {"ball": {"p": 1, "r": 2.0}},
        {"hull": [[1, 1], [1, -1], [-1, -1], [-1, 1]]},
        {"ball": {"p": "inf", "r": 0.5, "closed": False}},
    ],
    "dim": 2,
})
x = HVector(np.array([[0.3, 0.4], [1.0, -1.0], [2.0, 0.5], [0.1, 0.2]]))
res = h2_gauge(S, x)
print(res.method.value, res.per_component)


# The LP route can be cross-checked against bisection on a membership test
# that never touches the simplex code.

# In[3]:

rng = np.random.default_rng(0)
V = rng.standard_normal((9, 3))
C = PolytopeHull(V - V.mean(axis=0))
p = rng.standard_normal(3)
print(real_gauge(C, p), gauge_bisection(C, p, 1e-10))
