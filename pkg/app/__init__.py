# sqmk - stable quadratic modules and K-groups of small exact and triangulated categories
__version__ = "1.0.0"
