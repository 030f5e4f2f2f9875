"""tightscatter: rank-2 generalized cluster scattering diagrams.

Wall functions of a completed diagram come from a closed formula over
tight gradings of maximal Dyck paths; an order-by-order completion
serves as the oracle. On top of the diagram: broken lines and theta
functions, greedy elements and cluster variables, and relative GW
numbers read off the logarithm of binomial ray functions.
"""
