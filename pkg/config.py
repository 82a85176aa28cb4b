# config.py
import os
from dataclasses import dataclass
from dotenv import load_dotenv
import yaml

load_dotenv('.env.hecke')


@dataclass
class VerifierConfig:
    """Central configuration for the Hecke module verifier"""
    # Mode: normal, debug
    MODE = 'normal'

    # Output locations
    LOG_DIR = os.getenv('HECKE_LOG_DIR', 'verification_logs')
    REPORT_DIR = os.getenv('HECKE_REPORT_DIR', 'verification_reports')

    # Desk-scale guardrail on dim(W) * N^n
    MAX_TENSOR_DIM = int(os.getenv('HECKE_MAX_DIM', str(10 ** 6)))

    # Polynomial identity testing
    PIT_SAMPLES = 20
    PIT_BOUND = 10 ** 4
    PIT_SEED = int(os.getenv('HECKE_PIT_SEED', '20240601'))

    # Self-test ranges
    MURPHY_MAX_SIZE = 6
    SCHUR_WEYL_MAX_N = 4
    SCHUR_WEYL_MAX_M = 5
    CENTRAL_PAIRS = [(1, 2), (1, 3), (2, 3)]
    EQUAL_RANK_SIZES = [1, 2]

    # Readings of the ambiguous conventions; 'auto' resolves each against the tensor model
    HECKE_PARAMETER_READING = 'auto'   # 'as-written' | 'long-root'
    EIGEN_INDEX_READING = 'auto'       # 'k-m_p' | 'k-m_p+1'
    THETA_SIGN = 'auto'                # 1 | -1
    HC_SHIFT_ORDER = 'auto'            # 'shift-then-conjugate' | 'conjugate-then-shift'
    YCC_CONSTANT_TERM = 'auto'         # 'corrected' | 'as-printed'

    # Admissible grid for the relation, dimension, eigenvector and isomorphism oracles
    ACCEPTANCE_GRID = [
        {'label': 'case-A', 'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [-1], 'xi': [0], 'nu': ['3/5']},
        {'label': 'case-B', 'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [0], 'xi': [-1]},
        {'label': 'equal-rank-n2', 'p': 1, 'q': 1, 'n': 2, 'mu': '0', 'nvec': [0]},
        {'label': 'equal-rank-n1', 'p': 1, 'q': 1, 'n': 1, 'mu': '0', 'nvec': [0], 'nu': ['2']},
        {'label': 'equal-rank-n3', 'p': 1, 'q': 1, 'n': 3, 'mu': '0', 'nvec': [1]},
        {'label': 'equal-rank-p2', 'p': 2, 'q': 2, 'n': 2, 'mu': '0', 'nvec': [0, 0], 'nu': ['1/3', '5/7']},
        {'label': 'mixed-n2', 'p': 1, 'q': 2, 'n': 2, 'mu': '0', 'nvec': [-1], 'xi': [-1]},
        {'label': 'column-xi', 'p': 1, 'q': 3, 'n': 3, 'mu': '0', 'nvec': [-1], 'xi': [-1, -1]},
        {'label': 'hook-xi', 'p': 1, 'q': 3, 'n': 3, 'mu': '0', 'nvec': [0], 'xi': [-1, -2]},
        {'label': 'block-n2', 'p': 1, 'q': 2, 'n': 2, 'mu': '0', 'nvec': [-2], 'xi': [0]},
        {'label': 'block-n3', 'p': 1, 'q': 2, 'n': 3, 'mu': '0', 'nvec': [-3], 'xi': [0]},
    ]

    # Parameter sets violating the admissibility conditions; the invariant space must vanish
    INADMISSIBLE_GRID = [
        {'label': 'fractional-tau', 'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [1], 'xi': [0]},
        {'label': 'half-integral-blocks', 'p': 2, 'q': 2, 'n': 2, 'mu': '0', 'nvec': [0, 1]},
        {'label': 'positive-xi', 'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [-2], 'xi': [1]},
    ]

    # n = 1 parameter sets of the two central-character shapes
    END_TO_END_GRID = [
        {'label': 'case-1-k1', 'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [-1], 'xi': [0], 'nu': ['3/5']},
        {'label': 'case-2', 'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [0], 'xi': [-1]},
        {'label': 'equal-rank', 'p': 1, 'q': 1, 'n': 1, 'mu': '0', 'nvec': [0], 'nu': ['2']},
        {'label': 'case-1-mu1', 'p': 1, 'q': 2, 'n': 1, 'mu': '1', 'nvec': [0], 'xi': [-1], 'nu': ['4/9']},
        {'label': 'case-2-mu1', 'p': 1, 'q': 2, 'n': 1, 'mu': '1', 'nvec': [1], 'xi': [-2]},
        {'label': 'case-1-k2', 'p': 2, 'q': 3, 'n': 1, 'mu': '0', 'nvec': [0, -1], 'xi': [0], 'nu': ['1/2', '7/3']},
    ]

    # Reference points for resolving the reading switches when the tensor model is not run on the input
    THETA_REFERENCE = {'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [-1], 'xi': [0]}
    INDEX_REFERENCE = {'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [0], 'xi': [-1]}

    @property
    def GRID_SIZE(self) -> int:
        return len(self.ACCEPTANCE_GRID)

    @property
    def READING_SWITCHES(self) -> dict:
        return {
            'hecke_parameter_reading': self.HECKE_PARAMETER_READING,
            'eigen_index_reading': self.EIGEN_INDEX_READING,
            'theta_sign': self.THETA_SIGN,
            'hc_shift_order': self.HC_SHIFT_ORDER,
            'ycc_constant_term': self.YCC_CONSTANT_TERM,
        }

    def override_from_yaml(self, yaml_path: str) -> None:
        """Apply configuration overrides from a YAML file."""
        if not os.path.isfile(yaml_path):
            raise FileNotFoundError(f"Config file not found: {yaml_path}")

        with open(yaml_path, 'r', encoding='utf-8') as file:
            data = yaml.safe_load(file) or {}

        if not isinstance(data, dict):
            raise ValueError("YAML config must be a mapping of keys to values")

        for key, value in data.items():
            attr = getattr(type(self), key, None)
            if isinstance(attr, property):
                raise ValueError(f"Cannot override read-only setting: {key}")

            if hasattr(self, key):
                setattr(self, key, value)
            else:
                raise KeyError(f"Unknown configuration key: {key}")
