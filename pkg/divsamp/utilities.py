# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

from __future__ import with_statement

import os
import io
import math
import zlib
import inspect
import fnmatch

from contextlib import closing

import numpy as np

# PYCOMPAT
import six


class DivSampError(Exception):
    """Base class for all errors raised by divsamp"""
    pass


class ValidationError(DivSampError, ValueError):
    """An input violates a documented precondition or invariant"""
    pass


class ParseError(ValidationError):
    """A feature file could not be parsed"""

    def __init__(self, msg, path=None, lineno=None):
        self.path = path
        self.lineno = lineno
        where = ""
        if path is not None:
            where = "%s:" % path
        if lineno is not None:
            where += "%d:" % lineno
        if where:
            msg = "%s %s" % (where, msg)
        super(ParseError, self).__init__(msg)


class NumericError(DivSampError, ArithmeticError):
    """A numerical routine failed or was handed non-finite input"""
    pass


class InsufficientRankError(DivSampError):
    """The requested subset size exceeds the effective kernel rank"""
    pass


class InsufficientSupportError(DivSampError):
    """Too few instances carry positive selection mass"""
    pass


def fileobj(path_or_file, mode='r'):
    """Returns a file-like object that can be used as a context manager.

    Unlike a bare ``open()`` this also accepts an already open file object,
    which is then left open when the context exits.
    """
    if isinstance(path_or_file, six.string_types):
        if 'b' in mode:
            return open(path_or_file, mode)
        return io.open(path_or_file, mode, encoding='utf-8', newline='')
    else:
        return closing(_Unclosable(path_or_file))


class _Unclosable(object):
    """Proxy that ignores close() so callers keep ownership of a stream"""

    def __init__(self, stream):
        self._stream = stream

    def __getattr__(self, name):
        return getattr(self._stream, name)

    def __iter__(self):
        return iter(self._stream)

    def close(self):
        pass


def find(file_pattern, top_dir, max_depth=None, path_pattern=None):
    """Generator function to find files recursively.
    Usage::

        for filename in find("*.py", "divsamp/samplers"):
            print(filename)
    """
    if max_depth:
        base_depth = os.path.dirname(top_dir).count(os.path.sep)
        max_depth += base_depth

    for path, dirlist, filelist in os.walk(top_dir):
        if max_depth and path.count(os.path.sep) >= max_depth:
            del dirlist[:]

        if path_pattern and not fnmatch.fnmatch(path, path_pattern):
            continue

        for name in fnmatch.filter(filelist, file_pattern):
            yield os.path.join(path, name)


def import_module(module_fqname, superclasses=None):
    """Imports the module module_fqname and returns a list of defined classes
    from that module. If superclasses is defined then the classes returned will
    be subclasses of the specified superclass or superclasses. If superclasses
    is plural it must be a tuple of classes."""
    module_name = module_fqname.rpartition(".")[-1]
    module = __import__(module_fqname, globals(), locals(), [module_name])
    modules = [class_ for cname, class_ in
               inspect.getmembers(module, inspect.isclass)
               if class_.__module__ == module_fqname]
    if superclasses:
        modules = [m for m in modules if issubclass(m, superclasses)]

    return modules


class ImporterHelper(object):
    """Provides a list of modules that can be imported in a package.
    Importable modules are located along the module __path__ list and modules
    are files that end in .py.
    """

    def __init__(self, package):
        """package is a package module
        import my.package.module
        helper = ImporterHelper(my.package.module)"""
        self.package = package

    def _module_name(self, path):
        "Returns the module name given the path"
        base = os.path.basename(path)
        name, ext = os.path.splitext(base)
        return name

    def _get_modules_from_list(self, list_):
        names = [self._module_name(module)
                 for module in list_
                 if "__init__" not in module and module.endswith(".py")]
        names.sort()
        return names

    def _find_modules_in_dir(self, path):
        if os.path.exists(path):
            py_files = list(find("*.py", path, max_depth=1))
            return self._get_modules_from_list(py_files)
        return []

    def get_modules(self):
        """Returns the list of importable modules in the configured python
        package. """
        modules = []
        for path in self.package.__path__:
            if os.path.isdir(path):
                modules.extend(self._find_modules_in_dir(path))

        return modules


def _stream_key(key):
    if isinstance(key, six.string_types):
        return zlib.crc32(key.encode('utf-8')) & 0xffffffff
    key = int(key)
    if key < 0:
        raise ValidationError("stream keys must be non-negative: %d" % key)
    return key


def substream(seed, *keys):
    """Return a ``numpy.random.Generator`` for the stream (seed, *keys).

    Every random draw in divsamp derives from a root seed through this
    function, so that a stream depends only on its keys and never on the
    order in which streams are created. String keys (domain tags) are
    hashed with CRC-32.
    """
    entropy = [_stream_key(seed)] + [_stream_key(k) for k in keys]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def weighted_index(weights, rng):
    """Draw one index with probability proportional to ``weights``.

    Entries with zero weight are never returned. The caller guarantees that
    at least one weight is positive.
    """
    cumulative = np.cumsum(weights)
    total = cumulative[-1]
    idx = int(np.searchsorted(cumulative, rng.random() * total,
                              side='right'))
    if idx >= len(cumulative):
        # u * total rounded up to total
        idx = int(np.flatnonzero(np.asarray(weights) > 0)[-1])
    return idx


def format_float(value):
    """Shortest text that reads back to the same float, also for numpy
    scalars"""
    return repr(float(value))


def mean_and_stderr(values):
    """Return (mean, standard error) of a sequence of floats.

    The mean uses compensated summation so that the result does not depend
    on the order in which parallel workers produced the values. The
    standard error is the sample standard deviation over sqrt(R); a single
    value has a standard error of 0.
    """
    values = [float(v) for v in values]
    count = len(values)
    if not count:
        raise ValidationError("cannot summarise an empty sequence")
    mean = math.fsum(values) / count
    if count == 1:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (count - 1)
    return mean, math.sqrt(var) / math.sqrt(count)


def parse_float_list(value, name="value"):
    """Parse a comma separated list of reals, e.g. '0.1,1,10'"""
    items = [item.strip() for item in value.split(",") if item.strip()]
    if not items:
        raise ValidationError("%s: empty list" % name)
    try:
        return [float(item) for item in items]
    except ValueError:
        raise ValidationError("%s: not a list of numbers: '%s'"
                              % (name, value))

# vim: set et ts=4 sw=4 :
