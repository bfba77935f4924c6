"""Cusps and divisor degrees on X_1(q)"""
