# Infrastructure layer - file codecs, graph algorithms, solvers
