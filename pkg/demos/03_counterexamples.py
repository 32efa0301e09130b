# coding: utf-8

# # Counterexamples with re-checkable witnesses

# The verifier runs registered property checks. A failing check keeps a
# witness that can be re-verified without any sampling state.

# In[1]:

import json

from bihyp import verifier


# A set cut out by a bound on the sum of absolute idempotent coordinates
# contains every slice of 3/4 but not 3/4 itself.

# In[2]:

rep = verifier.verify(verifier.PropertySpec("T4.decomposition", verifier.ABS_SUM))
print(rep.verdict.value, rep.expected)
print(json.dumps(rep.to_dict()["checks"][0]["witness"]))
print("witness re-verified:", verifier.reverify(rep.to_json()))


# An absorbing set that is not stable under the idempotents.

# In[3]:

rep = verifier.verify(verifier.PropertySpec("Absorbing.ei-not-stable"))
for c in rep.to_dict()["checks"]:
    print(c["check"], c["verdict"], c["witness"])


# The registry lists every property with its instances and expected verdicts.

# In[4]:

for entry in verifier.list_registry():
    print(entry["id"], sorted(entry["instances"]))
