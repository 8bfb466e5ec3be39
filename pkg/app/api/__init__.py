"""
HTTP routes over the depth, neighborhood and classification operations
"""
