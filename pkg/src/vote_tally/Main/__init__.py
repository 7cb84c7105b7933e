"""
Main package initialization
"""
