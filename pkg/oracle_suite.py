# oracle_suite.py
import logging
import random
from contextlib import contextmanager
from copy import deepcopy
from dataclasses import dataclass, field
from itertools import product
from time import perf_counter
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from central_char import (
    SHIFT_ORDERS,
    YCC_CONSTANT_TERMS,
    CaseTag,
    CentralCharacterChecker,
    parameter_variables,
    shift_order_outcomes,
)
from config import VerifierConfig
from daha import format_spectrum, joint_spectrum, make_presentation, rational_eigenvalues, verify_linear_rep
from errors import HeckeError, MurphyBasisError, ParameterError
from exactmath import format_rational, parse_rational
from functor_image import (
    INDEX_READINGS,
    FunctorParams,
    build_P_tilde,
    eigenvalue_table,
    load_params,
    predicted_dimension,
    psi_set_cardinality,
    relation_constants,
    require_admissible,
    target_presentation,
    validate,
)
from report_generator import ReportGenerator
from symcomb import CosetTable, coset_count_formula, jm_matrices, murphy_basis, partitions_of, schur_weyl_check
from tensor_model import (
    Resolution,
    TensorModel,
    check_guardrail,
    isomorphism_check,
    pick_reading,
    resolve_eigen_index,
    resolve_hecke_reading,
    resolve_theta_sign,
)
from utils import close_logger, format_duration, generate_unique_id, read_json_file, setup_logger
from verification_session import RunReport, VerificationSession

# Largest rank for which cosets are enumerated next to the closed-form count
COSET_ENUMERATION_MAX_N = 5


@dataclass
class RunContext:
    session: VerificationSession
    logger: logging.Logger
    config: VerifierConfig
    total_steps: int
    index: int = 0
    models: Dict[str, TensorModel] = field(default_factory=dict)

    @property
    def rng(self) -> random.Random:
        return random.Random(int(self.config.PIT_SEED))

    @contextmanager
    def step(self, title: str):
        self.index += 1
        self.logger.info(f"\n[STEP {self.index}/{self.total_steps}] {title}...")
        start = perf_counter()
        try:
            yield
        finally:
            elapsed = perf_counter() - start
            self.session.add_timing(title.lower().replace(' ', '_'), elapsed)
            self.logger.debug(f"{title} took {format_duration(elapsed)}")


@dataclass
class Conventions:
    """Readings adopted for one parameter pack, with the resolutions behind them."""
    theta_sign: int
    hecke_reading: str
    index_reading: str
    resolutions: Dict[str, Resolution]

    def to_dict(self) -> Dict[str, Any]:
        return {key: r.to_dict() for key, r in self.resolutions.items()}


def _grid_params(entries: Sequence[Dict[str, Any]]) -> List[Tuple[str, FunctorParams]]:
    result = []
    for i, entry in enumerate(entries, start=1):
        result.append((str(entry.get('label', f'entry-{i}')), FunctorParams.from_dict(entry)))
    return result


def _relation_suites(rep, params: FunctorParams, reading: str) -> Dict[str, Any]:
    """Relation suite with and without the mixed Coxeter relations."""
    full = verify_linear_rep(target_presentation(params, reading, mixed_coxeter=True), rep)
    listed = verify_linear_rep(target_presentation(params, reading, mixed_coxeter=False), rep)
    listed_failures = {r.name for r in listed.failures}
    return {
        'passed': full.passed,
        'mixed_coxeter': full.to_dict(),
        'listed_relations_only': listed.to_dict(),
        'mixed_coxeter_difference': sorted(r.name for r in full.failures if r.name not in listed_failures),
    }


class HeckeVerifier:
    """Main orchestrator for the verification commands"""

    def __init__(self, config_overrides: Optional[Dict[str, Any]] = None):
        self.config = VerifierConfig()
        if config_overrides:
            for key, value in config_overrides.items():
                setattr(self.config, key, value)

    # Run plumbing

    def _run(self, command: str, total_steps: int, body: Callable[[RunContext], None],
             config_overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        local_config = deepcopy(self.config)
        if config_overrides:
            for key, value in config_overrides.items():
                setattr(local_config, key, value)

        run_id = generate_unique_id(command.replace('-', '_'))
        logger = setup_logger(run_id, local_config.LOG_DIR)
        if local_config.MODE == 'debug':
            for handler in logger.handlers:
                if not isinstance(handler, logging.FileHandler):
                    handler.setLevel(logging.DEBUG)
        session = VerificationSession(run_id, command, logger)
        ctx = RunContext(session, logger, local_config, total_steps + 1)

        logger.info("=" * 80)
        logger.info(f"Starting verification run: {run_id}")
        logger.info(f"Command: {command}")
        logger.info(f"Reading switches: {local_config.READING_SWITCHES}")
        logger.info("=" * 80)

        try:
            body(ctx)
        except HeckeError as e:
            logger.error(f"{type(e).__name__}: {e}", exc_info=local_config.MODE == 'debug')
            session.add_error(str(e), e.exit_code)
        except Exception as e:
            logger.error(f"Verification error: {e}", exc_info=True)
            session.add_error(str(e), 1)

        try:
            ctx.index = total_steps
            with ctx.step("Generating reports"):
                session.finalize()
                report = session.to_report()
                reporter = ReportGenerator(logger, local_config)
                json_path = reporter.save_report(reporter.generate_json_report(report), f'{run_id}.json')
                html_path = reporter.save_report(reporter.generate_html_report(report), f'{run_id}.html')

            logger.info("=" * 80)
            logger.info(f"Verification {'complete' if report.status == 'pass' else 'FAILED'}: {command}")
            logger.info(f"Status: {report.status} (exit code {report.exit_code})")
            logger.info(f"Discrepancies: {len(report.discrepancies)}")
            logger.info(f"Duration: {format_duration(session.timing.get('total', 0.0))}")
            logger.info(f"HTML Report: {html_path}")
            logger.info(f"JSON Report: {json_path}")
            logger.info("=" * 80)

            return {
                'success': report.status == 'pass',
                'status': report.status,
                'exit_code': report.exit_code,
                'run_id': run_id,
                'report': report,
                'reports': {
                    'json': json_path,
                    'html': html_path,
                },
            }
        finally:
            close_logger(logger)

    # Shared pieces

    def _resolve_conventions(self, ctx: RunContext, params: Optional[FunctorParams]) -> Conventions:
        """Resolve the reading switches on params, or on the reference packs when params is None."""
        config = ctx.config
        theta_params = params or FunctorParams.from_dict(config.THETA_REFERENCE)
        theta = resolve_theta_sign(theta_params, ctx.logger, config, fixed=config.THETA_SIGN)
        sign = int(theta.chosen)
        if params is not None:
            model = TensorModel(params, ctx.logger, config, theta_sign=sign)
            hecke_model = index_model = model
        else:
            hecke_model = TensorModel(theta_params, ctx.logger, config, theta_sign=sign)
            index_model = TensorModel(FunctorParams.from_dict(config.INDEX_REFERENCE), ctx.logger, config,
                                      theta_sign=sign)
        hecke = resolve_hecke_reading(hecke_model, config.HECKE_PARAMETER_READING)
        index = resolve_eigen_index(index_model, config.EIGEN_INDEX_READING)
        resolutions = {'theta_sign': theta, 'hecke_parameter_reading': hecke, 'eigen_index_reading': index}
        for key, resolution in resolutions.items():
            ctx.logger.info(f"Convention {key}: {resolution.chosen} ({resolution.status})")
        if params is not None:
            ctx.models[self._model_key(params, sign)] = hecke_model
        return Conventions(sign, str(hecke.chosen), str(index.chosen), resolutions)

    @staticmethod
    def _model_key(params: FunctorParams, sign: int) -> str:
        return f"{sorted(params.to_dict().items())}|{sign}"

    def _model(self, ctx: RunContext, params: FunctorParams, sign: int) -> TensorModel:
        key = self._model_key(params, sign)
        if key not in ctx.models:
            ctx.models[key] = TensorModel(params, ctx.logger, ctx.config, theta_sign=sign)
        return ctx.models[key]

    @staticmethod
    def _record_resolutions(ctx: RunContext, conventions: Conventions, label: Optional[str] = None):
        for key, resolution in conventions.resolutions.items():
            if resolution.status == 'unresolved':
                ctx.session.add_discrepancy('resolution', resolution.to_dict(), label)

    @staticmethod
    def _central_readings(ctx: RunContext) -> Dict[str, Resolution]:
        """Shift order first, then the constant term of the y₁² identity under that order."""
        outcomes = shift_order_outcomes(ctx.rng)
        shift = pick_reading('hc_shift_order', SHIFT_ORDERS, [o for o in SHIFT_ORDERS if outcomes[o]],
                             outcomes, ctx.config.HC_SHIFT_ORDER)
        checker = CentralCharacterChecker(ctx.logger, ctx.config)
        terms = checker.constant_term_outcomes(str(shift.chosen))
        constant = pick_reading('ycc_constant_term', YCC_CONSTANT_TERMS,
                                [t for t in YCC_CONSTANT_TERMS if terms[t]], terms, ctx.config.YCC_CONSTANT_TERM)
        resolutions = {'hc_shift_order': shift, 'ycc_constant_term': constant}
        for resolution in resolutions.values():
            if resolution.status == 'unresolved':
                ctx.session.add_discrepancy('resolution', resolution.to_dict())
        return resolutions

    def _closed_form(self, ctx: RunContext, params: FunctorParams, index_reading: str,
                     label: Optional[str] = None) -> Dict[str, Any]:
        d = require_admissible(params)
        formula = predicted_dimension(params)
        table = eigenvalue_table(params, index_reading)
        result: Dict[str, Any] = {
            'derived': d.to_dict(),
            'dimension': formula.to_dict(),
            'psi_set_cardinality': psi_set_cardinality(params),
            'eigenvalues': table.to_dict(),
        }
        if not table.complete:
            ctx.session.add_discrepancy('eigenvalue_table', f"index overflow under reading {index_reading}", label)
        if params.n <= COSET_ENUMERATION_MAX_N:
            cosets = len(CosetTable(params.n, d.block_sizes()))
            closed = coset_count_formula(params.n, d.block_sizes())
            result['cosets'] = {
                'enumerated': cosets,
                'closed_form': format_rational(closed),
                'without_factorials': format_rational(coset_count_formula(params.n, d.block_sizes(), False)),
                'passed': cosets == closed == formula.coset_factor,
            }
            if not result['cosets']['passed']:
                ctx.session.add_discrepancy('coset_count', result['cosets'], label)
        ctx.logger.info(f"Predicted dimension {formula.total} = {formula.coset_factor} x {formula.specht_factor}")
        return result

    def _induced_module(self, ctx: RunContext, params: FunctorParams, conventions: Conventions,
                        label: Optional[str] = None) -> Dict[str, Any]:
        """Relations, dimension and y-spectrum of the induced module."""
        rep = build_P_tilde(params, conventions.hecke_reading, conventions.index_reading)
        expected = predicted_dimension(params).total
        suites = _relation_suites(rep, params, conventions.hecke_reading)
        y_names = [f'y{k}' for k in range(1, params.n + 1)]
        spectrum = joint_spectrum(rep, y_names)
        table = eigenvalue_table(params, conventions.index_reading)
        columns = {table.column(s) for s in range(len(table.values[0]))} if table.values else set()
        missing = sorted(columns - set(spectrum))
        result = {
            'dimension': rep.dimension,
            'dimension_matches': rep.dimension == expected,
            'relations': suites,
            'joint_spectrum': format_spectrum(spectrum),
            'seed_eigenvalues_present': not missing,
        }
        if rep.dimension != expected:
            ctx.session.add_discrepancy('induced_dimension', {'induced': rep.dimension, 'predicted': expected}, label)
        if not suites['passed']:
            ctx.session.add_discrepancy('induced_relations', suites['mixed_coxeter']['failures'], label)
        if missing:
            ctx.session.add_discrepancy(
                'induced_spectrum', [[format_rational(v) for v in column] for column in missing], label)
        ctx.logger.info(f"Induced module: dimension {rep.dimension}, relations "
                        f"{'hold' if suites['passed'] else 'FAIL'}")
        return result

    def _tensor_oracle(self, ctx: RunContext, params: FunctorParams, conventions: Conventions,
                       label: Optional[str] = None) -> Dict[str, Any]:
        model = self._model(ctx, params, conventions.theta_sign)
        expected = predicted_dimension(params).total
        rep = model.tensor_rep()
        suites = _relation_suites(rep, params, conventions.hecke_reading)
        eigen = model.eigenvector_check(conventions.index_reading)
        props = model.prop_checks()
        result = {
            'balanced_dimension': model.space.dimension,
            'full_dimension': model.full_dimension,
            'dimension': model.dimension,
            'dimension_matches': model.dimension == expected,
            'relations': suites,
            'eigenvectors': eigen.to_dict(),
            'structure': props,
        }
        if model.dimension != expected:
            ctx.session.add_discrepancy('invariant_dimension', {'model': model.dimension, 'predicted': expected}, label)
        if not suites['passed']:
            ctx.session.add_discrepancy('model_relations', suites['mixed_coxeter']['failures'], label)
        if not eigen.passed:
            ctx.session.add_discrepancy('eigenvectors', eigen.to_dict(), label)
        failed_props = sorted(name for name, ok in props.items() if not ok)
        if failed_props:
            ctx.session.add_discrepancy('structure', failed_props, label)
        ctx.logger.info(f"Tensor model: dimension {model.dimension} (predicted {expected})")
        return result

    def _isomorphism(self, ctx: RunContext, params: FunctorParams, conventions: Conventions,
                     label: Optional[str] = None) -> Dict[str, Any]:
        model = self._model(ctx, params, conventions.theta_sign)
        result = isomorphism_check(model, conventions.hecke_reading, conventions.index_reading, ctx.rng)
        if not result['invertible']:
            ctx.session.add_discrepancy('isomorphism', result, label)
        return result

    def _verify_params(self, ctx: RunContext, params: FunctorParams, oracle: bool,
                       label: Optional[str] = None) -> Dict[str, Any]:
        """Every check on one parameter pack, without step banners."""
        require_admissible(params)
        if oracle:
            check_guardrail(params, int(ctx.config.MAX_TENSOR_DIM))
        conventions = self._resolve_conventions(ctx, params if oracle else None)
        self._record_resolutions(ctx, conventions, label)
        result: Dict[str, Any] = {
            'params': params.to_dict(),
            'resolutions': conventions.to_dict(),
            'closed_form': self._closed_form(ctx, params, conventions.index_reading, label),
            'induced_module': self._induced_module(ctx, params, conventions, label),
        }
        if oracle:
            result['tensor_model'] = self._tensor_oracle(ctx, params, conventions, label)
            result['isomorphism'] = self._isomorphism(ctx, params, conventions, label)
        return result

    # Commands

    def check_params(self, params_file: str, config_overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """Validate a parameter file and echo the derived quantities"""

        def body(ctx: RunContext):
            with ctx.step("Loading parameters"):
                params = load_params(params_file)
                ctx.session.set_params(params.to_dict())

            with ctx.step("Checking admissibility"):
                violations = validate(params)
                ctx.session.add_results('admissibility', {'admissible': not violations, 'violations': violations})
                if violations:
                    ctx.session.add_error("inadmissible parameters: " + "; ".join(violations), 2)
                    return

            with ctx.step("Computing derived quantities"):
                reading = ctx.config.EIGEN_INDEX_READING
                results = self._closed_form(ctx, params, reading if reading in INDEX_READINGS else 'k-m_p')
                results['eigenvalues_shifted_index'] = eigenvalue_table(params, 'k-m_p+1').to_dict()
                ctx.session.add_results('derived', results)

        return self._run('check-params', 3, body, config_overrides)

    def verify(self, params_file: Optional[str] = None, oracle: bool = False,
               params: Optional[FunctorParams] = None, max_dim: Optional[int] = None,
               config_overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """Verify one parameter pack: closed forms and induced module, plus the tensor model with oracle"""
        overrides = dict(config_overrides or {})
        if max_dim is not None:
            overrides['MAX_TENSOR_DIM'] = int(max_dim)

        def body(ctx: RunContext):
            nonlocal params
            with ctx.step("Loading and validating parameters"):
                if params is None:
                    if not params_file:
                        raise ParameterError("no parameter file given")
                    params = load_params(params_file)
                ctx.session.set_params(params.to_dict())
                require_admissible(params)
                if oracle:
                    size = check_guardrail(params, int(ctx.config.MAX_TENSOR_DIM))
                    ctx.session.add_result('tensor_space_dimension', size)

            with ctx.step("Resolving conventions"):
                conventions = self._resolve_conventions(ctx, params if oracle else None)
                self._record_resolutions(ctx, conventions)
                ctx.session.add_results('resolutions', conventions.to_dict())

            with ctx.step("Evaluating closed forms"):
                ctx.session.add_results('closed_form', self._closed_form(ctx, params, conventions.index_reading))

            with ctx.step("Building the induced module"):
                ctx.session.add_results('induced_module', self._induced_module(ctx, params, conventions))

            if not oracle:
                ctx.logger.info("Tensor model oracle not requested")
                return

            with ctx.step("Checking the tensor model"):
                ctx.session.add_results('tensor_model', self._tensor_oracle(ctx, params, conventions))

            with ctx.step("Searching for an isomorphism"):
                ctx.session.add_results('isomorphism', self._isomorphism(ctx, params, conventions))

        return self._run('verify', 6 if oracle else 4, body, overrides)

    def central(self, p: int, q: int, case: str, k: int = 1, at: Optional[Sequence[Any]] = None,
                config_overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """y₁² identity for one rank pair and shape, symbolically or at a point (μ, τ, ν₁..ν_p)"""

        def body(ctx: RunContext):
            with ctx.step("Validating the shape"):
                tag = CaseTag(case, 0 if case == 'case2' else k)
                ctx.session.set_params({'p': p, 'q': q, 'case': str(tag)})
                point = None
                if at is not None:
                    names = parameter_variables(p)
                    if len(at) != len(names):
                        raise ParameterError(f"--at needs {len(names)} values ({', '.join(names)}), got {len(at)}")
                    point = {name: parse_rational(v) for name, v in zip(names, at)}

            with ctx.step("Resolving the shift order and constant term"):
                readings = self._central_readings(ctx)
                ctx.session.add_results('resolutions', {key: r.to_dict() for key, r in readings.items()})
                order = str(readings['hc_shift_order'].chosen)
                constant_term = str(readings['ycc_constant_term'].chosen)

            with ctx.step("Evaluating the central character"):
                checker = CentralCharacterChecker(ctx.logger, ctx.config)
                result = checker.check(p, q, tag, order, constant_term)
                data = result.to_dict()
                data['passed'] = result.holds
                if p == q:
                    data['branch'] = 'equal-rank'
                if point is not None:
                    data['at'] = {name: format_rational(v) for name, v in point.items()}
                    data['values'] = checker.evaluate_at(result, point)
                    data['expected_value'] = format_rational(result.expected.evaluate(point))
                ctx.session.add_results('central_character', data)
                if not result.holds:
                    ctx.session.add_discrepancy('ycc_identity', {'y1_squared': data['y1_squared'],
                                                                 'expected': data['expected']})
                ctx.session.add_results('printed_formulas',
                                        checker.residuals(p, q, tag, order))

        return self._run('central', 3, body, config_overrides)

    def batch(self, grid_file: str, oracle: bool = False,
              config_overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """Verify every parameter pack of a JSON grid file"""

        def body(ctx: RunContext):
            with ctx.step("Loading the grid"):
                data = read_json_file(grid_file)
                entries = data.get('grid') if isinstance(data, dict) else data
                if not isinstance(entries, list):
                    raise ParameterError("grid file must hold a list of parameter objects or {'grid': [...]}")
                ctx.session.add_result('grid_size', len(entries))

            with ctx.step("Verifying grid entries"):
                outcomes = []
                for i, entry in enumerate(entries, start=1):
                    label = str(entry.get('label', f'entry-{i}')) if isinstance(entry, dict) else f'entry-{i}'
                    ctx.logger.info(f"Grid entry {i}/{len(entries)}: {label}")
                    before = len(ctx.session.discrepancies)
                    try:
                        result = self._verify_params(ctx, FunctorParams.from_dict(entry), oracle, label)
                    except HeckeError as e:
                        ctx.session.add_discrepancy('entry', f"{type(e).__name__}: {e}", label, e.exit_code)
                        result = {'error': str(e), 'exit_code': e.exit_code}
                    result['label'] = label
                    result['passed'] = len(ctx.session.discrepancies) == before
                    outcomes.append(result)
                ctx.session.add_results('grid', outcomes)
                ctx.session.add_result('grid_passed', sum(1 for r in outcomes if r['passed']))

        return self._run('batch', 2, body, config_overrides)

    # Self-test

    def _murphy_suite(self, ctx: RunContext) -> Dict[str, Any]:
        checked, failures = 0, []
        for m in range(1, int(ctx.config.MURPHY_MAX_SIZE) + 1):
            for shape in partitions_of(m):
                try:
                    plain = murphy_basis(shape, 'L')
                    hat = murphy_basis(shape, 'Lhat')
                except MurphyBasisError as e:
                    failures.append({'shape': str(shape), 'error': str(e)})
                    continue
                for basis in (plain, hat):
                    jm = jm_matrices(shape, basis.variant)
                    for s, w in enumerate(basis.vectors):
                        for i, op in enumerate(jm):
                            checked += 1
                            if op @ w != w.scale(basis.eigenvalues[s][i]):
                                failures.append({'shape': str(shape), 'variant': basis.variant, 's': s + 1, 'i': i + 1})
                for s, alpha in enumerate(plain.eigenvalues):
                    predicted = tuple(alpha[m - i] for i in range(1, m)) + (0,)
                    if hat.eigenvalues[s] != predicted:
                        failures.append({'shape': str(shape), 's': s + 1, 'hat_eigenvalues': list(hat.eigenvalues[s])})
        return {'passed': not failures, 'eigen_equations': checked, 'failures': failures}

    def _schur_weyl(self, ctx: RunContext) -> Dict[str, Any]:
        rows = []
        for N, m in product(range(1, int(ctx.config.SCHUR_WEYL_MAX_N) + 1),
                            range(1, int(ctx.config.SCHUR_WEYL_MAX_M) + 1)):
            total, power = schur_weyl_check(N, m)
            if total != power:
                rows.append({'N': N, 'm': m, 'sum': total, 'N^m': power})
        return {'passed': not rows, 'failures': rows}

    def _coset_counts(self, ctx: RunContext) -> Dict[str, Any]:
        failures, checked = [], 0
        for n in range(1, 4):
            for parts in (2, 3):
                for blocks in product(range(n + 1), repeat=parts):
                    if sum(blocks) != n:
                        continue
                    checked += 1
                    enumerated = len(CosetTable(n, blocks))
                    if enumerated != coset_count_formula(n, blocks):
                        failures.append({'n': n, 'blocks': list(blocks), 'enumerated': enumerated})
        return {'passed': not failures, 'checked': checked, 'failures': failures}

    def _central_suite(self, ctx: RunContext, order: str, constant_term: str) -> Dict[str, Any]:
        checker = CentralCharacterChecker(ctx.logger, ctx.config)
        pairs = [tuple(pair) for pair in ctx.config.CENTRAL_PAIRS]
        pairs += [(p, p) for p in ctx.config.EQUAL_RANK_SIZES]
        rows, residuals = [], []
        for p, q in pairs:
            for tag in checker.cases_for(p, q):
                result = checker.check(p, q, tag, order, constant_term)
                rows.append(result.to_dict())
                if not result.holds:
                    ctx.session.add_discrepancy('ycc_identity', result.to_dict(), f'({p},{q}) {tag}')
                residuals.append(checker.residuals(p, q, tag, order))
        return {'passed': all(r['identity_holds'] for r in rows), 'identities': rows, 'printed_formulas': residuals}

    def _end_to_end(self, ctx: RunContext, sign: int, order: str, constant_term: str) -> Dict[str, Any]:
        checker = CentralCharacterChecker(ctx.logger, ctx.config)
        rows = []
        for label, params in _grid_params(ctx.config.END_TO_END_GRID):
            row = checker.end_to_end_check(params, self._model(ctx, params, sign), order, constant_term)
            row['label'] = label
            rows.append(row)
            if not row['holds']:
                ctx.session.add_discrepancy('end_to_end', row, label)
        return {'passed': all(r['holds'] for r in rows), 'entries': rows}

    def _known_answers(self, ctx: RunContext, conventions: Conventions) -> Dict[str, Any]:
        """Fixed regressions: Case A, the equal-rank rank-two pack and the Case B square."""
        checks: Dict[str, bool] = {}
        case_a = FunctorParams.from_dict({'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [-1], 'xi': [0], 'nu': ['3/5']})
        model = self._model(ctx, case_a, conventions.theta_sign)
        checks['case_a_dimension_2'] = model.dimension == 2
        checks['case_a_eigenvalue'] = eigenvalue_table(case_a).values[0][0] == parse_rational('3/10')
        spectrum = rational_eigenvalues(model.y_operator(1))
        checks['case_a_y1_spectrum'] = spectrum == {parse_rational('3/10'): 1, parse_rational('-3/10'): 1}

        equal = FunctorParams.from_dict({'p': 1, 'q': 1, 'n': 2, 'mu': '0', 'nvec': [0], 'nu': ['1/3']})
        model = self._model(ctx, equal, conventions.theta_sign)
        checks['equal_rank_dimension_4'] = model.dimension == 4
        checks['equal_rank_eigenvalues'] = (
            eigenvalue_table(equal).column(0) == (parse_rational('2/3'), parse_rational('-1/3')))
        checks['equal_rank_eigenvectors'] = model.eigenvector_check(conventions.index_reading).passed

        case_b = FunctorParams.from_dict({'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [0], 'xi': [-1]})
        y1 = self._model(ctx, case_b, conventions.theta_sign).y_operator(1)
        checks['case_b_y1_squared'] = y1.rows == 1 and (y1 @ y1).get(0, 0) == parse_rational('1/4')

        for name, ok in checks.items():
            if not ok:
                ctx.session.add_discrepancy('known_answer', name)
        return {'passed': all(checks.values()), 'checks': checks}

    def _mutation(self, ctx: RunContext, conventions: Conventions) -> Dict[str, Any]:
        """A sign flip in κ₁ must break the relation suite."""
        grid = dict(_grid_params(ctx.config.ACCEPTANCE_GRID))
        label = 'mixed-n2' if 'mixed-n2' in grid else 'case-A'
        params = grid.get(label) or FunctorParams.from_dict(ctx.config.THETA_REFERENCE)
        s_const, g_const = relation_constants(params, conventions.hecke_reading)
        if conventions.hecke_reading == 'as-written':
            mutated = (-s_const, g_const)
        else:
            mutated = (s_const, -g_const)
        presentation = make_presentation('BC', params.n, mutated)
        rep = self._model(ctx, params, conventions.theta_sign).tensor_rep()
        report = verify_linear_rep(presentation, rep)
        result = {
            'label': label,
            'presentation': presentation.describe(),
            'detected': not report.passed,
            'failed_relations': [r.name for r in report.failures],
            'passed': not report.passed,
        }
        if report.passed:
            ctx.session.add_discrepancy('mutation', 'kappa sign flip went undetected', label)
        return result

    def selftest(self, config_overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """Run the full acceptance suite"""

        def body(ctx: RunContext):
            config = ctx.config

            with ctx.step("Murphy basis eigenvectors"):
                result = self._murphy_suite(ctx)
                ctx.session.add_results('murphy', result)
                if not result['passed']:
                    ctx.session.add_discrepancy('murphy', result['failures'])

            with ctx.step("Schur-Weyl dimension identity"):
                result = self._schur_weyl(ctx)
                ctx.session.add_results('schur_weyl', result)
                if not result['passed']:
                    ctx.session.add_discrepancy('schur_weyl', result['failures'])

            with ctx.step("Coset counts"):
                result = self._coset_counts(ctx)
                ctx.session.add_results('cosets', result)
                if not result['passed']:
                    ctx.session.add_discrepancy('coset_count', result['failures'])

            with ctx.step("Resolving conventions"):
                conventions = self._resolve_conventions(ctx, None)
                self._record_resolutions(ctx, conventions)
                central_readings = self._central_readings(ctx)
                order = str(central_readings['hc_shift_order'].chosen)
                constant_term = str(central_readings['ycc_constant_term'].chosen)
                resolutions = conventions.to_dict()
                resolutions.update({key: r.to_dict() for key, r in central_readings.items()})
                ctx.session.add_results('resolutions', resolutions)

            with ctx.step("Acceptance grid"):
                rows = []
                for label, params in _grid_params(config.ACCEPTANCE_GRID):
                    ctx.logger.info(f"Grid point {label}")
                    before = len(ctx.session.discrepancies)
                    try:
                        row = self._verify_params(ctx, params, True, label)
                    except HeckeError as e:
                        ctx.session.add_discrepancy('grid', f"{type(e).__name__}: {e}", label, e.exit_code)
                        row = {'error': str(e)}
                    row['label'] = label
                    row['passed'] = len(ctx.session.discrepancies) == before
                    rows.append(row)
                ctx.session.add_results('acceptance_grid', {'passed': all(r['passed'] for r in rows), 'entries': rows})

            with ctx.step("Inadmissible grid"):
                rows = []
                for label, params in _grid_params(config.INADMISSIBLE_GRID):
                    violations = validate(params)
                    dimension = TensorModel(params, ctx.logger, config, theta_sign=conventions.theta_sign).dimension
                    row = {'label': label, 'violations': violations, 'dimension': dimension,
                           'passed': bool(violations) and dimension == 0}
                    rows.append(row)
                    if not row['passed']:
                        ctx.session.add_discrepancy('inadmissible', row, label)
                ctx.session.add_results('inadmissible_grid', {'passed': all(r['passed'] for r in rows), 'entries': rows})

            with ctx.step("Central characters"):
                ctx.session.add_results('central_characters', self._central_suite(ctx, order, constant_term))

            with ctx.step("End-to-end y1 squared"):
                ctx.session.add_results('end_to_end', self._end_to_end(ctx, conventions.theta_sign, order, constant_term))

            with ctx.step("Known answers"):
                ctx.session.add_results('known_answers', self._known_answers(ctx, conventions))

            with ctx.step("Mutation smoke test"):
                ctx.session.add_results('mutation', self._mutation(ctx, conventions))

        return self._run('selftest', 10, body, config_overrides)

    @staticmethod
    def summary(report: RunReport) -> List[str]:
        """Short human-readable lines for the console"""
        lines = [f"Command: {report.command}", f"Status: {report.status} (exit code {report.exit_code})"]
        for key, value in sorted(report.results.items()):
            if isinstance(value, dict) and 'passed' in value:
                lines.append(f"  {key}: {'pass' if value['passed'] else 'FAIL'}")
        for entry in report.discrepancies:
            label = f" [{entry['label']}]" if entry.get('label') else ''
            lines.append(f"  discrepancy {entry['check']}{label}: {entry['detail']}")
        return lines
