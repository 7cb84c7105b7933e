"""
Configs package initialization
"""
