"""
Views package initialization
"""
