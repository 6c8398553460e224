# %% [markdown]
# # A double cover of the flag manifold graph
#
# Since H1 of the face complex is Z/2, some voltage in Z/2 vanishes on
# every face boundary without being trivial on loops.  The resulting cover
# is connected and trivial over every face.

# %%
from gkm import corpus
from gkm.covers import check_pbim, face_trivial_voltage, validate_covering, voltage_cover
from gkm.labels import validate_gkm
from gkm.monodromy import axial_group

doc = corpus.fl3()
volt = face_trivial_voltage(doc.graph, 2)
print(volt)
cov = voltage_cover(doc.graph, doc.labeling, 2, volt)
print(len(cov.total.vertices), "vertices, connected:", cov.total.is_connected())
print("covering problems:", validate_covering(cov))
print("GKM problems:", validate_gkm(cov.total, cov.total_labeling))

# %% [markdown]
# The cover has more axial functions than the base, but the deck-invariant
# ones are exactly the pulled-back ones.

# %%
print("rank upstairs", axial_group(cov.total, cov.total_labeling).rank)
res = check_pbim(cov)
print("base rank", res.base_rank, "invariants", res.invariants.shape[0], "equal:", res.equal)
