"""Services package for gdual."""
