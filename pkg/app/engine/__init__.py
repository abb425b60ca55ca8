# Layout algorithms
