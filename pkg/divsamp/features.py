# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

""" Feature tables: the in-memory data model for per-domain feature
    embeddings, and the Feature CSV reader and writer.

    A Feature CSV file has the header::

        id,domain,label[,weight],f0,f1,...,f{d-1}

    with one instance per row. The ``weight`` column is optional and
    defaults to 1.0 for every instance. Lines starting with ``#`` are
    ignored.
"""

import csv
import logging
from collections import OrderedDict, Counter

import numpy as np

# PYCOMPAT
import six

from divsamp.utilities import (ValidationError, ParseError, fileobj,
                               substream, format_float)

log = logging.getLogger('divsamp')

ID = "id"
DOMAIN = "domain"
LABEL = "label"
WEIGHT = "weight"
FEATURE_PREFIX = "f"


def _readonly(array):
    array.setflags(write=False)
    return array


class FeatureTable(object):
    """One domain's feature matrix with per-instance ids, labels and
    non-negative weights.

    Tables are immutable: the arrays are flagged read-only and every
    transformation returns a new table.
    """

    def __init__(self, features, ids=None, domain="", labels=None,
                 weights=None):
        features = np.array(features, dtype=np.float64, copy=True)
        if features.ndim == 1:
            features = features.reshape(-1, 1)
        if features.ndim != 2:
            raise ValidationError("features must be a 2-d matrix")
        n = features.shape[0]
        if n == 0:
            raise ValidationError("feature table '%s' is empty" % domain)
        if not np.all(np.isfinite(features)):
            raise ValidationError("feature table '%s' has non-finite "
                                  "entries" % domain)

        if ids is None:
            ids = ["%s%d" % (domain + "-" if domain else "", i)
                   for i in range(n)]
        ids = [six.text_type(i) for i in ids]
        if len(ids) != n:
            raise ValidationError("expected %d ids, got %d" % (n, len(ids)))
        if len(set(ids)) != n:
            dup = [i for i, c in Counter(ids).items() if c > 1][0]
            raise ValidationError("duplicate id '%s' in domain '%s'"
                                  % (dup, domain))

        if labels is None:
            labels = [""] * n
        labels = [six.text_type(lab) for lab in labels]
        if len(labels) != n:
            raise ValidationError("expected %d labels, got %d"
                                  % (n, len(labels)))

        if weights is None:
            weights = np.ones(n)
        weights = _check_weights(weights, n)

        self.features = _readonly(features)
        self.ids = tuple(ids)
        self.domain = six.text_type(domain)
        self.labels = tuple(labels)
        self.weights = _readonly(weights)

    @property
    def n(self):
        return self.features.shape[0]

    @property
    def d(self):
        return self.features.shape[1]

    def __len__(self):
        return self.n

    def __repr__(self):
        return ("FeatureTable(domain='%s', n=%d, d=%d)"
                % (self.domain, self.n, self.d))

    def subset(self, indices):
        """Return a new table holding the rows ``indices`` in that order"""
        indices = list(indices)
        return FeatureTable(self.features[indices],
                            ids=[self.ids[i] for i in indices],
                            domain=self.domain,
                            labels=[self.labels[i] for i in indices],
                            weights=self.weights[indices])

    def with_features(self, features):
        return FeatureTable(features, ids=self.ids, domain=self.domain,
                            labels=self.labels, weights=self.weights)

    def positive_support(self):
        """Number of instances with a strictly positive weight"""
        return int(np.count_nonzero(self.weights > 0))


def _check_weights(weights, n):
    weights = np.array(weights, dtype=np.float64, copy=True).reshape(-1)
    if weights.shape[0] != n:
        raise ValidationError("expected %d weights, got %d"
                              % (n, weights.shape[0]))
    if not np.all(np.isfinite(weights)):
        raise ValidationError("weights must be finite")
    if np.any(weights < 0):
        raise ValidationError("weights must be non-negative (found %r)"
                              % float(weights[weights < 0][0]))
    if not np.any(weights > 0):
        raise ValidationError("at least one weight must be positive")
    return weights


class DomainCollection(object):
    """An ordered set of FeatureTables with unique domain tags and a shared
    feature dimension."""

    def __init__(self, tables):
        tables = list(tables)
        if not tables:
            raise ValidationError("a domain collection needs at least one "
                                  "table")
        self._tables = OrderedDict()
        for table in tables:
            if table.domain in self._tables:
                raise ValidationError("duplicate domain tag '%s'"
                                      % table.domain)
            if table.d != tables[0].d:
                raise ValidationError("domain '%s' has dimension %d, "
                                      "expected %d"
                                      % (table.domain, table.d, tables[0].d))
            self._tables[table.domain] = table

    @property
    def d(self):
        return self.domains[0].d

    @property
    def domains(self):
        return list(self._tables.values())

    @property
    def tags(self):
        return list(self._tables.keys())

    def __len__(self):
        return len(self._tables)

    def __iter__(self):
        return iter(self._tables.values())

    def __contains__(self, tag):
        return tag in self._tables

    def __getitem__(self, tag):
        try:
            return self._tables[tag]
        except KeyError:
            raise ValidationError("unknown domain '%s'" % tag)

    def __repr__(self):
        return "DomainCollection(%s)" % ", ".join(
            "%s:%d" % (t.domain, t.n) for t in self)

    def select(self, tags):
        return DomainCollection(self[tag] for tag in tags)

    def map(self, func):
        return DomainCollection(func(table) for table in self)

    def standardized(self):
        """Z-score every feature dimension with statistics pooled over all
        domains. Zero-variance dimensions are centred but not scaled."""
        pooled = np.vstack([t.features for t in self])
        mean = pooled.mean(axis=0)
        std = pooled.std(axis=0)
        std[std == 0] = 1.0
        return self.map(lambda t: t.with_features((t.features - mean) / std))

    def capped(self, max_instances, seed):
        """Return a collection where every domain holds at most
        ``max_instances`` rows, drawn uniformly without replacement from
        the stream (seed, 'cap', domain)."""
        if max_instances is None:
            return self
        if max_instances < 1:
            raise ValidationError("instance cap must be positive")

        def cap(table):
            if table.n <= max_instances:
                return table
            rng = substream(seed, "cap", table.domain)
            keep = np.sort(rng.choice(table.n, size=max_instances,
                                      replace=False))
            log.debug("capped domain '%s' from %d to %d instances"
                      % (table.domain, table.n, max_instances))
            return table.subset(keep)

        return self.map(cap)


def class_balance_weights(table):
    """Inverse class-frequency weights w_i = N / (C * n_c(i)).

    Every class ends up with the same total weight N / C; a single-class
    table gets uniform unit weights.
    """
    labels = table.labels if hasattr(table, "labels") else list(table)
    if not len(labels):
        raise ValidationError("class weights need at least one label")
    counts = Counter(labels)
    total = float(len(labels))
    classes = float(len(counts))
    return np.array([total / (classes * counts[lab]) for lab in labels])


def _feature_columns(header, path):
    if header[:3] != [ID, DOMAIN, LABEL]:
        raise ParseError("header must start with 'id,domain,label'",
                         path, 1)
    rest = header[3:]
    has_weight = bool(rest) and rest[0] == WEIGHT
    if has_weight:
        rest = rest[1:]
    if not rest:
        raise ParseError("header declares no feature columns", path, 1)
    for idx, name in enumerate(rest):
        if name != "%s%d" % (FEATURE_PREFIX, idx):
            raise ParseError("expected feature column '%s%d', found '%s'"
                             % (FEATURE_PREFIX, idx, name), path, 1)
    return has_weight, len(rest)


def _read_rows(path):
    """Parse a Feature CSV file into per-domain column lists"""
    name = path if isinstance(path, six.string_types) else \
        getattr(path, "name", "<stream>")
    grouped = OrderedDict()
    with fileobj(path) as fp:
        reader = csv.reader(fp)
        header = None
        has_weight = False
        d = 0
        for row in reader:
            lineno = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if row[0].lstrip().startswith("#"):
                continue
            row = [cell.strip() for cell in row]
            if header is None:
                header = row
                has_weight, d = _feature_columns(header, name)
                continue
            if len(row) != len(header):
                raise ParseError("expected %d fields, found %d"
                                 % (len(header), len(row)), name, lineno)
            start = 4 if has_weight else 3
            try:
                values = [float(v) for v in row[start:]]
            except ValueError:
                raise ParseError("non-numeric feature value", name, lineno)
            if not all(np.isfinite(values)):
                raise ParseError("non-finite feature value", name, lineno)
            weight = 1.0
            if has_weight:
                try:
                    weight = float(row[3])
                except ValueError:
                    raise ParseError("non-numeric weight '%s'" % row[3],
                                     name, lineno)
                if not np.isfinite(weight):
                    raise ParseError("non-finite weight", name, lineno)
                if weight < 0:
                    raise ValidationError("%s:%d: negative weight %s"
                                          % (name, lineno, row[3]))
            cols = grouped.setdefault(row[1], ([], [], [], []))
            cols[0].append(row[0])
            cols[1].append(row[2])
            cols[2].append(weight)
            cols[3].append(values)
    if header is None:
        raise ParseError("missing header", name)
    if not grouped:
        raise ValidationError("%s: feature table is empty" % name)
    log.debug("read %s: %d domains, d=%d"
              % (name, len(grouped), d))
    return grouped


def load_domains(path, domain_filter=None):
    """Load a Feature CSV file as a DomainCollection, one table per
    distinct ``domain`` value, in order of first appearance."""
    grouped = _read_rows(path)
    if domain_filter is not None:
        if domain_filter not in grouped:
            raise ValidationError("domain '%s' not found in %s"
                                  % (domain_filter, path))
        grouped = OrderedDict([(domain_filter, grouped[domain_filter])])
    tables = []
    for domain, (ids, labels, weights, rows) in grouped.items():
        tables.append(FeatureTable(np.array(rows), ids=ids, domain=domain,
                                   labels=labels, weights=weights))
    return DomainCollection(tables)


def load_feature_table(path, domain_filter=None):
    """Load a Feature CSV file.

    Returns a FeatureTable when ``domain_filter`` is given or the file
    holds a single domain, and a DomainCollection otherwise.
    """
    collection = load_domains(path, domain_filter=domain_filter)
    if len(collection) == 1:
        return collection.domains[0]
    return collection


def write_feature_table(tables, path):
    """Write a FeatureTable or DomainCollection in the Feature CSV layout.

    The weight column is always written; floats use the shortest
    representation that reads back to the identical double.
    """
    if isinstance(tables, FeatureTable):
        tables = DomainCollection([tables])
    d = tables.d
    header = [ID, DOMAIN, LABEL, WEIGHT] + \
        ["%s%d" % (FEATURE_PREFIX, j) for j in range(d)]
    with fileobj(path, 'w') as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(header)
        for table in tables:
            for i in range(table.n):
                writer.writerow([table.ids[i], table.domain, table.labels[i],
                                 format_float(table.weights[i])] +
                                [format_float(v) for v in table.features[i]])

# vim: set et ts=4 sw=4 :
