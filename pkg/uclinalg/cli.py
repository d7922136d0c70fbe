"""
Batch command-line front end: read a real matrix from a file, run one operation on it and write the result
in the same format to standard output or to ``-o <path>``.

Exit status: 0 on success, 1 when the input cannot be parsed (or the output cannot be written), 2 when
balancing or a LAPACK routine does not converge, 3 on invalid arguments or a violated precondition.
Failures are reported as a single ``error: ...`` line on standard error.
"""
import argparse
import sys
from typing import Optional, Sequence, List

import numpy as np

from uclinalg import globals as uc_globals
from uclinalg.core import ToleranceConfig, pinv
from uclinalg.decomp import ui_singular_values, ui_svd, si_eigenvalues, ui_signature
from uclinalg.errors import MatrixParseError, BalancingConvergenceError
from uclinalg.inverses import BlockPartition, linv, rinv, ginv, mixed_block_inverse
from uclinalg.matrixio import FORMATS, read_matrix, write_blocks, normalize_format
from uclinalg.scaling import general_scale
from uclinalg.size.base import SizeFunction
from uclinalg.size.types import parse_size_function
from uclinalg.typing import FileName, Matrix
from uclinalg.utils.constants import default_balance_tol, default_max_iter
from uclinalg.utils.util import be_silent, get_defined_slots, log_print

__all__ = (
    "SUBCOMMANDS",
    "CliRequest",
    "build_parser",
    "parse_request",
    "compute",
    "run",
    "main"
)

SUBCOMMANDS = ('uinv', 'pinv', 'linv', 'rinv', 'dscale', 'usvd', 'usvdecomp', 'sieig', 'signature', 'mixedinv')

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_CONVERGENCE = 2
EXIT_USAGE = 3


class _UsageError(ValueError):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad arguments, which is reserved for non-convergence here.
    def error(self, message: str):
        raise _UsageError(message)


class CliRequest:
    """One validated command-line invocation"""

    __slots__ = (
        "subcommand",
        "input_path",
        "output_path",
        "fmt",
        "cfg",
        "size_fn",
        "k",
        "m_top",
        "hadamard",
        "exact"
    )

    def __init__(self,
                 subcommand: str,
                 input_path: FileName,
                 output_path: Optional[FileName] = None,
                 fmt: str = 'csv',
                 cfg: Optional[ToleranceConfig] = None,
                 size_fn: Optional[SizeFunction] = None,
                 k: Optional[int] = None,
                 m_top: Optional[int] = None,
                 hadamard: bool = False,
                 exact: bool = False) -> None:
        """
        One validated command-line invocation.

        Args:
            subcommand:   operation to run, one of SUBCOMMANDS
            input_path:   matrix file
            output_path:  result file.
                          If None: standard output
            fmt:          ``csv`` or ``mm`` (``matrixmarket``), for both input and output
            cfg:          tolerance configuration
            size_fn:      size function of the ``dscale`` subcommand.
                          If None: geometric mean
            k:            number of UI singular values of the ``signature`` subcommand
            m_top:        count of incommensurate-unit variables of the ``mixedinv`` subcommand
            hadamard:     If True: the ``signature`` subcommand writes the Hadamard signature
            exact:        If True: round-trip exact output instead of 6 significant digits
        """
        if subcommand not in SUBCOMMANDS:
            raise ValueError(f"Unknown subcommand '{subcommand}'")
        if size_fn is not None and not isinstance(size_fn, SizeFunction):
            raise TypeError("'size_fn' must be an instance of SizeFunction or None")
        if subcommand == 'signature' and not hadamard:
            if k is None:
                raise ValueError("signature requires --k unless --hadamard is given")
            if k < 1:
                raise ValueError(f"--k must be positive, got {k}")
        if subcommand == 'mixedinv':
            if m_top is None:
                raise ValueError("mixedinv requires --partition")
            if m_top < 1:
                raise ValueError(f"--partition must be positive, got {m_top}")
        self.subcommand = subcommand
        self.input_path = input_path
        self.output_path = output_path
        self.fmt = normalize_format(fmt)
        self.cfg = ToleranceConfig() if cfg is None else cfg
        self.size_fn = size_fn
        self.k = k
        self.m_top = m_top
        self.hadamard = hadamard
        self.exact = exact

    def __repr__(self) -> str:
        fields = ', '.join(f'{slot}={getattr(self, slot)!r}' for slot in get_defined_slots(type(self)))
        return f"{type(self).__name__}({fields})"


def _size_function(text: str) -> SizeFunction:
    try:
        return parse_size_function(text)
    except (TypeError, ValueError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument('input',
                        help='Matrix file to read')
    common.add_argument('-o',
                        '--output',
                        default=None,
                        help='Result file (default: standard output)')
    common.add_argument('--format',
                        default='csv',
                        choices=FORMATS,
                        help='Format of both the input and the result')
    common.add_argument('--tol',
                        type=float,
                        default=default_balance_tol,
                        help='Balancing convergence threshold on the mean absolute log-adjustment of a sweep')
    common.add_argument('--rank-tol',
                        type=float,
                        default=None,
                        help='Relative singular-value cutoff (default: max(m, n) * machine epsilon)')
    common.add_argument('--max-iter',
                        type=int,
                        default=default_max_iter,
                        help='Maximum number of balancing sweeps')
    common.add_argument('--exact',
                        action='store_true',
                        help='Write round-trip exact values instead of 6 significant digits')
    common.add_argument('-v',
                        '--verbose',
                        action='store_true',
                        help='Log progress to standard error')

    parser = _ArgumentParser(prog='ucinv',
                             description='Unit-consistent generalized inverses and unit-invariant decompositions.')
    subparsers = parser.add_subparsers(dest='subcommand', metavar='subcommand', parser_class=_ArgumentParser)
    subparsers.required = True

    subparsers.add_parser('uinv', parents=[common], help='unit-consistent generalized inverse')
    subparsers.add_parser('pinv', parents=[common], help='Moore-Penrose pseudoinverse')
    subparsers.add_parser('linv', parents=[common], help='left unit-consistent generalized inverse')
    subparsers.add_parser('rinv', parents=[common], help='right unit-consistent generalized inverse')
    dscale_parser = subparsers.add_parser('dscale', parents=[common],
                                          help='general-diagonal scaling: dl, dr and the balanced matrix')
    dscale_parser.add_argument('--size-fn',
                               type=_size_function,
                               default=None,
                               help="Size function: 'gm', 'p:<p>' or 'ab:<a>:<b>' (default: gm)")
    subparsers.add_parser('usvd', parents=[common], help='unit-invariant singular values')
    subparsers.add_parser('usvdecomp', parents=[common], help='unit-invariant SVD factors D, U, s, V, E')
    subparsers.add_parser('sieig', parents=[common], help='scale-invariant eigenvalues as (real, imag) rows')
    signature_parser = subparsers.add_parser('signature', parents=[common], help='unit-invariant signature')
    signature_parser.add_argument('--k',
                                  type=int,
                                  default=None,
                                  help='Number of largest UI singular values')
    signature_parser.add_argument('--hadamard',
                                  action='store_true',
                                  help='Write the Hadamard signature vec(A o ginv(A)^T) instead')
    mixed_parser = subparsers.add_parser('mixedinv', parents=[common],
                                         help='generalized inverse with a mixed diagonal / orthonormal block')
    mixed_parser.add_argument('--partition',
                              type=int,
                              required=True,
                              help='Count of leading incommensurate-unit variables')
    return parser


def parse_request(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """
    Parse the command line into a namespace carrying a validated ``request`` and the ``verbose`` flag.

    Raises:
        ValueError: invalid arguments
    """
    args = build_parser().parse_args(argv)
    cfg = ToleranceConfig(rank_tol=args.rank_tol, balance_tol=args.tol, max_iter=args.max_iter)
    args.request = CliRequest(subcommand=args.subcommand,
                              input_path=args.input,
                              output_path=args.output,
                              fmt=args.format,
                              cfg=cfg,
                              size_fn=getattr(args, 'size_fn', None),
                              k=getattr(args, 'k', None),
                              m_top=getattr(args, 'partition', None),
                              hadamard=getattr(args, 'hadamard', False),
                              exact=args.exact)
    return args


def compute(req: CliRequest, A: Matrix) -> List[np.ndarray]:
    """
    Run the operation of a request on a parsed matrix.

    Returns:
        blocks to write, in order
    """
    cfg = req.cfg
    command = req.subcommand
    if command == 'uinv':
        return [ginv(A, cfg)]
    if command == 'pinv':
        return [pinv(A, cfg)]
    if command == 'linv':
        return [linv(A, cfg)]
    if command == 'rinv':
        return [rinv(A, cfg)]
    if command == 'dscale':
        return list(general_scale(A, cfg, req.size_fn))
    if command == 'usvd':
        return [ui_singular_values(A, cfg)]
    if command == 'usvdecomp':
        return list(ui_svd(A, cfg))
    if command == 'sieig':
        eigenvalues = si_eigenvalues(A, cfg)
        return [np.column_stack((eigenvalues.real, eigenvalues.imag))]
    if command == 'signature':
        mode = 'hadamard' if req.hadamard else 'singular'
        return [ui_signature(A, req.k, cfg, mode=mode)]
    return [mixed_block_inverse(A, BlockPartition.for_size(A.shape[0], req.m_top), cfg)]


def _fail(message: str, status: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return status


def run(req: CliRequest) -> int:
    """
    Read the input, run the request and write the result.

    Returns:
        exit status
    """
    try:
        A = read_matrix(req.input_path, req.fmt)
    except MatrixParseError as e:
        return _fail(str(e), EXIT_PARSE)
    log_print("ucinv: {} on {} matrix from {}", req.subcommand, A.shape, req.input_path)

    try:
        blocks = compute(req, A)
    except BalancingConvergenceError as e:
        return _fail(str(e), EXIT_CONVERGENCE)
    except np.linalg.LinAlgError as e:
        return _fail(f"{req.subcommand} did not converge: {e}", EXIT_CONVERGENCE)
    except (ValueError, TypeError) as e:
        return _fail(str(e), EXIT_USAGE)

    try:
        if req.output_path is None:
            write_blocks(sys.stdout, blocks, req.fmt, req.exact)
        else:
            with open(req.output_path, 'w') as stream:
                write_blocks(stream, blocks, req.fmt, req.exact)
    except OSError as e:
        return _fail(f"cannot write {req.output_path}: {e}", EXIT_PARSE)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = parse_request(argv)
    except (ValueError, TypeError) as e:
        return _fail(str(e), EXIT_USAGE)

    silent_mode = be_silent()
    uc_globals.silent_mode = silent_mode and not args.verbose
    try:
        return run(args.request)
    finally:
        uc_globals.silent_mode = silent_mode


if __name__ == '__main__':
    sys.exit(main())
