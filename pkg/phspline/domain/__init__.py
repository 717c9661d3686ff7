"""
Numerical core: knot partitions, B-splines, product tensors, PH curves,
closed-form tables, conics and Hermite interpolation.
"""
