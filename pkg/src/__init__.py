"""
Structural Holomorphic Workbench
Numerical verification of Wirtinger-calculus identities and integral theorems
"""
