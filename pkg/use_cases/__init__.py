# Use cases layer - interactors

from .bench_use_case import BenchReport, BenchRow, BenchUseCase
from .generate_corpus_use_case import CorpusItem, GenerateCorpusUseCase
from .solve_instance_use_case import SolveInstanceUseCase
from .verify_solution_use_case import VerificationResult, VerifySolutionUseCase

__all__ = [
    'BenchReport',
    'BenchRow',
    'BenchUseCase',
    'CorpusItem',
    'GenerateCorpusUseCase',
    'SolveInstanceUseCase',
    'VerificationResult',
    'VerifySolutionUseCase',
]
