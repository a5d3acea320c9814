"""Engine layer - canonization pipeline algorithms."""
