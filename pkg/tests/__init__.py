"""
Test suite for Sango Text Sim
"""
