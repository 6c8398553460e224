# %% [markdown]
# # Faces of the flag manifold graph
#
# Six vertices (permutations of 123), nine edges.  The labels are only
# pairwise independent, so the connection is part of the data: here its
# faces are three squares and one hexagon.

# %%
from gkm import corpus
from gkm.dot import to_dot
from gkm.graph import enumerate_2faces
from gkm.homotopy import betti_numbers, face_betti_numbers, face_complex_h1

doc = corpus.fl3()
g, o = doc.graph, doc.orientation
faces = enumerate_2faces(g)
for f in faces:
    print(f.length, [g.name(d) for d in f.boundary])

# %% [markdown]
# Heights come from planar coordinates of the six vertices.  The hexagon
# has two local maxima, so its top Betti number is 2 while every square has
# exactly one.

# %%
print("graph:", betti_numbers(g, o))
for f in faces:
    print(f.length, face_betti_numbers(g, f, o))

# %% [markdown]
# Gluing a disc into every face gives a space with first homology Z/2.

# %%
print(face_complex_h1(g, faces))

# %% [markdown]
# DOT output with the hexagon dotted:

# %%
print(to_dot(doc, [f for f in faces if f.length == 6]))
