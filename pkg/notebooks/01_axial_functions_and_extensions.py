# %% [markdown]
# # Axial functions and extensions
#
# Two labelings of the same two-vertex, three-edge graph.  The signed one
# carries a connection that swaps the other two edges; the unsigned one uses
# the connection that sends every edge to its own reverse.

# %%
import numpy as np

from gkm import corpus
from gkm.extension import build_extension, extension_rank, torus_extension_pipeline
from gkm.graph import enumerate_2faces
from gkm.labels import check_effective
from gkm.monodromy import axial_group

signed = corpus.s6_signed()
unsigned = corpus.s6_unsigned()

# %% [markdown]
# The faces differ: one closed connection path of length six through all
# three edges, versus three 2-cycles.

# %%
for doc in (signed, unsigned):
    g = doc.graph
    print(doc.name, [[g.name(d) for d in f.boundary] for f in enumerate_2faces(g)])

# %% [markdown]
# The rank of A(Γ) decides how far the labels extend.

# %%
for doc in (signed, unsigned):
    A = axial_group(doc.graph, doc.labeling)
    print(doc.name, "rank", A.rank)
    print(A.basis)

# %% [markdown]
# The signed graph stops at rank 2.  The monodromy of one spanning-tree
# loop is already nontrivial:

# %%
A = axial_group(signed.graph, signed.labeling)
print(A.monodromy(0))

# %% [markdown]
# The unsigned graph extends to rank 3, and the result is an effective
# torus graph whose first two coordinates are the old labels.

# %%
res = build_extension(unsigned.graph, unsigned.labeling, 3)
g = unsigned.graph
for j, eid in enumerate(g.edge_ids):
    print(eid, unsigned.labeling[2 * j], "->", res.labeling[2 * j])
print("projection\n", res.projection)
print(check_effective(res.labeling))

# %% [markdown]
# The full pipeline on a complexity-one graph: CP^5 with labels pushed to a
# rank-4 lattice.

# %%
doc = corpus.cp(5)
p = corpus.generic_projection(doc, 4)
proj = corpus.project(doc, p)
rep = torus_extension_pipeline(proj.graph, proj.labeling, proj.orientation)
print(p)
print("rank", rep.rank, "success", rep.success, "-", rep.hamcase)
print(np.array(rep.extension.labeling.lift[:6]))
