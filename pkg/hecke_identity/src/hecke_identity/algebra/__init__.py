"""Finite-field groups, cyclotomic numbers and the character table of PSL2(F_q)"""
