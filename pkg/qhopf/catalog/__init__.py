'''
Named, parameterized fixtures: the base quasi-Hopf algebras, the
classification families in dimension 6, the Yetter-Drinfeld fixtures over
k[C2] and H(2) and the biproducts assembled from them.
The modules are imported lazily by qhopf.catalog.registry
'''
