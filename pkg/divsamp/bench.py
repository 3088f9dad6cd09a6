# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

""" Repeated-draw benchmarks of the samplers.

    ``qe_bench`` reports the quantisation error of R independent subsets per
    domain. ``distance_mape_bench`` compares the average pairwise distance
    between domains computed from R small subsets against the value computed
    from the full tables.

    Draw r of domain ``tag`` always uses the stream (seed, tag, r), so
    results do not depend on the number of worker threads.
"""

import math
import logging
from itertools import combinations
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor

from divsamp.engine import SamplerEngine, RefreshPolicy
from divsamp.kernels import as_gamma_set
from divsamp.metrics import (QeReport, MapeReport, quantisation_error, mmd,
                             coral_distance, mean_distance)
from divsamp.reporting import Report, Section, Statistic
from divsamp.utilities import ValidationError, substream, mean_and_stderr

POOLED = "pooled"
AVERAGE = "average"
HELD_OUT = "held-out"
DISTANCES = ("mmd", "coral", "mean")


def pair_key(a, b):
    return "%s|%s" % (a, b)


def _mean(values):
    values = list(values)
    return math.fsum(values) / len(values)


class BenchResult(object):
    """Per-domain (or per-pair) reports of one benchmark run, in report
    order, plus any summary rows computed across reports."""

    def __init__(self, bench, sampler, k, draws, seed, distance=None):
        self.bench = bench
        self.sampler = sampler
        self.k = k
        self.draws = draws
        self.seed = seed
        self.distance = distance
        self.reports = OrderedDict()
        self.summaries = OrderedDict()

    def __getitem__(self, key):
        return self.reports[key]

    def _statistics(self, report):
        if isinstance(report, QeReport):
            return [Statistic("qe", report.mean, report.stderr,
                              report.draws)]
        est_mean, est_stderr = report.estimate_summary()
        return [
            Statistic("%s_mape" % self.distance, report.mape, report.stderr,
                      report.draws),
            Statistic("%s_estimate" % self.distance, est_mean, est_stderr,
                      report.draws),
            Statistic("%s_ground_truth" % self.distance,
                      report.ground_truth, 0.0, 1),
        ]

    def to_report(self):
        report = Report()
        for key, entry in self.reports.items():
            section = Section(key)
            section.add(*self._statistics(entry))
            report.add(section)
        for key, stats in self.summaries.items():
            section = Section(key)
            section.add(*stats)
            report.add(section)
        return report


class Bench(object):
    """Shared plumbing of the benchmarks: one engine with the samplers built
    from the full tables, and a thread pool over draw indices."""

    def __init__(self, collection, sampler_kind, k, draws, gammas, seed,
                 threads=4, class_balance=False, log=None):
        if draws < 1:
            raise ValidationError("number of draws must be positive")
        if seed is None:
            raise ValidationError("benchmarks need an explicit seed")
        self.collection = collection
        self.k = int(k)
        self.draws = int(draws)
        self.gamma_set = as_gamma_set(gammas)
        self.seed = seed
        self.threads = max(1, int(threads))
        self.log = log or logging.getLogger('divsamp')
        self.engine = SamplerEngine(collection, sampler_kind, k=self.k,
                                    gammas=self.gamma_set, seed=seed,
                                    policy=RefreshPolicy(warmup=False),
                                    class_balance=class_balance,
                                    log=self.log)

    def _format_msg(self, msg):
        return "[bench] %s" % msg

    def _log_debug(self, msg):
        self.log.debug(self._format_msg(msg))

    def draw(self, r):
        """One subset per domain for draw index r"""
        subsets = OrderedDict()
        for tag in self.collection.tags:
            subsets[tag] = self.engine.next_minibatch(
                tag, rng=substream(self.seed, tag, r))
        return subsets

    def run(self, task):
        """Run task(r) for every draw index; results in draw order"""
        self._log_debug("%d draws on %d threads" % (self.draws,
                                                    self.threads))
        with ThreadPoolExecutor(self.threads) as pool:
            return list(pool.map(task, range(self.draws)))

    def ground_truth(self, func, pairs):
        """Distance of every domain pair over the full tables"""
        truth = OrderedDict()
        for a, b in pairs:
            truth[(a, b)] = func(self.collection[a].features,
                                 self.collection[b].features)
            self._log_debug("ground truth %s = %g"
                            % (pair_key(a, b), truth[(a, b)]))
        return truth

    def result(self, bench, distance=None):
        return BenchResult(bench, self.engine.kind.short_name, self.k,
                           self.draws, self.seed, distance=distance)


def qe_bench(collection, sampler_kind, k, draws, gammas, seed, threads=4,
             class_balance=False, log=None):
    """Quantisation error of ``draws`` independent subsets of size k per
    domain. Returns a BenchResult keyed by domain tag plus 'pooled'."""
    bench = Bench(collection, sampler_kind, k, draws, gammas, seed,
                  threads=threads, class_balance=class_balance, log=log)

    def task(r):
        subsets = bench.draw(r)
        return OrderedDict((tag, quantisation_error(collection[tag], subset))
                           for tag, subset in subsets.items())

    per_draw = bench.run(task)
    result = bench.result("qe-bench")
    pooled = []
    for tag in collection.tags:
        values = [draw[tag] for draw in per_draw]
        result.reports[tag] = QeReport(values)
        pooled.extend(values)
    result.reports[POOLED] = QeReport(pooled)
    return result


def distance_function(distance, gammas=None):
    """Return a callable (a, b) -> float for one of DISTANCES"""
    if distance == "mmd":
        gamma_set = as_gamma_set(gammas)

        def mmd_value(a, b):
            return mmd(a, b, gamma_set).value
        return mmd_value
    if distance == "coral":
        return coral_distance
    if distance == "mean":
        return mean_distance
    raise ValidationError("unknown distance '%s' (expected one of %s)"
                          % (distance, ", ".join(DISTANCES)))


def distance_mape_bench(collection, sampler_kind, k, draws, gammas, seed,
                        distance="mmd", held_out=False, threads=4,
                        class_balance=False, log=None):
    """MAPE of small-sample domain distances.

    The ground truth of every unordered domain pair uses the full tables;
    draw r estimates each pair from one subset of size k per domain. The
    result holds one report per pair ('A|B') and one for the average over
    all pairs ('average'). With ``held_out`` every domain is left out in
    turn and the average over the remaining pairs is reported as
    'held-out:TAG', followed by a 'held-out:average' summary row.
    """
    if len(collection) < 2:
        raise ValidationError("distance benchmarks need at least 2 domains")
    if held_out and len(collection) < 3:
        raise ValidationError("held-out reports need at least 3 domains")
    func = distance_function(distance, gammas)
    bench = Bench(collection, sampler_kind, k, draws, gammas, seed,
                  threads=threads, class_balance=class_balance, log=log)
    pairs = list(combinations(collection.tags, 2))

    truth = bench.ground_truth(func, pairs)

    def task(r):
        subsets = bench.draw(r)
        feats = dict((tag, collection[tag].features[subset.as_array()])
                     for tag, subset in subsets.items())
        return dict(((a, b), func(feats[a], feats[b])) for a, b in pairs)

    per_draw = bench.run(task)

    def averaged(selected):
        return MapeReport(_mean(truth[p] for p in selected),
                          [_mean(values[p] for p in selected)
                           for values in per_draw])

    result = bench.result("mmd-bench", distance=distance)
    for a, b in pairs:
        result.reports[pair_key(a, b)] = \
            MapeReport(truth[(a, b)], [values[(a, b)] for values in per_draw])
    result.reports[AVERAGE] = averaged(pairs)

    if held_out:
        mapes = []
        for tag in collection.tags:
            report = averaged([p for p in pairs if tag not in p])
            result.reports["%s:%s" % (HELD_OUT, tag)] = report
            mapes.append(report.mape)
        mean, stderr = mean_and_stderr(mapes)
        result.summaries["%s:%s" % (HELD_OUT, AVERAGE)] = [
            Statistic("%s_mape" % distance, mean, stderr, len(mapes))]
    return result


def mmd_mape_bench(collection, sampler_kind, k, draws, gammas, seed,
                   **kwargs):
    """distance_mape_bench with the MMD as the distance"""
    return distance_mape_bench(collection, sampler_kind, k, draws, gammas,
                               seed, distance="mmd", **kwargs)

# vim: set et ts=4 sw=4 :
