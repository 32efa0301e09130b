# coding: utf-8

# # Arithmetic in H2

# Numbers are stored by their four idempotent coordinates, so products,
# inverses and the modulus all act entry by entry.

# In[1]:

import numpy as np

from bihyp import E, J1, J2, J3, ONE, Bihyperbolic, compare, format_canonical, inverse, modulus, to_canonical


# The units multiply like the Klein four-group.

# In[2]:

for a, b in [(J1, J2), (J2, J3), (J1, J3)]:
    print(format_canonical(a), "*", format_canonical(b), "=", format_canonical(a * b))


# The idempotents split one into four orthogonal pieces.

# In[3]:

print(sum(E, Bihyperbolic(0.0)) == ONE)
print(np.array([[float((E[i] * E[k]).lam[i]) for k in range(4)] for i in range(4)]))
print(to_canonical(E[0]))


# A number is invertible exactly when none of its idempotent coordinates vanish.

# In[4]:

x = Bihyperbolic(2.0, -1.0, 0.5, 4.0)
print(format_canonical(inverse(x)))
print((x * inverse(x)).isclose(ONE, 1e-15))
try:
    inverse(E[0])
except Exception as err:
    print(type(err).__name__, err)


# The modulus is the entrywise absolute value, and the order is entrywise too.

# In[5]:

print(modulus(Bihyperbolic(-2, 3, 0, -1)).lam)
print(compare(E[0], ONE), compare(E[0], E[1]))
