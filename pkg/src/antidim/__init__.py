"""Active-attack privacy measures of networks."""
