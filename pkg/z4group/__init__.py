"""Exact computations with the order-384 group of Type II ℤ₄-code enumerators."""
