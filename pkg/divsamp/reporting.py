# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

""" This provides a restricted tag language to define benchmark reports, and
    the plain text and CSV renderers for them.
"""

import csv
import json
from collections import OrderedDict

# PYCOMPAT
import six

#: columns of the benchmark report CSV
CSV_COLUMNS = ("sampler", "domain_or_pair", "metric", "mean", "stderr",
               "draws", "k", "seed")


class Node(object):

    def __str__(self):
        return json.dumps(self.data)

    def can_add(self, node):
        return False


class Leaf(Node):
    """Marker class that can be added to a Section node"""
    pass


class Report(Node):
    """The root element of a report. This is a container for sections, kept
    in insertion order."""

    def __init__(self):
        self.data = OrderedDict()

    def can_add(self, node):
        return isinstance(node, Section)

    def add(self, *nodes):
        for node in nodes:
            if self.can_add(node):
                self.data[node.name] = node.data


class Section(Node):
    """A section is a container for leaf elements. Sections may be nested
    inside of Report objects only."""

    def __init__(self, name):
        self.name = name
        self.data = OrderedDict()

    def can_add(self, node):
        return isinstance(node, Leaf)

    def add(self, *nodes):
        for node in nodes:
            if self.can_add(node):
                self.data.setdefault(node.ADDS_TO, []).append(node.data)


class Statistic(Leaf):

    ADDS_TO = "statistics"

    def __init__(self, metric, mean, stderr, draws):
        self.data = {"metric": metric,
                     "mean": mean,
                     "stderr": stderr,
                     "draws": draws}


def _format_number(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


class PlainTextReport(object):
    """Will generate a plain text report from a top_level Report object"""

    STATISTIC = "  * %(metric)s: %(mean).6g +/- %(stderr).3g (%(draws)d draws)"
    DIVIDER = "=" * 72

    subsections = (
        (Statistic, STATISTIC, "-  statistics:"),
    )

    def __init__(self, report_node):
        self.report_node = report_node
        self.line_buf = []

    def unicode(self):
        self.line_buf = line_buf = []
        for section_name, section_contents in six.iteritems(
                self.report_node.data):
            line_buf.append(section_name + "\n" + self.DIVIDER)
            for type_, format_, header in self.subsections:
                self.process_subsection(section_contents, type_.ADDS_TO,
                                        header, format_)

        return u'\n'.join(i if isinstance(i, six.text_type) else six.u(i)
                          for i in line_buf)

    def process_subsection(self, section, key, header, format_):
        if key in section:
            self.line_buf.append(header)
            for item in section.get(key):
                self.line_buf.append(format_ % item)


class CsvReport(object):
    """Renders the statistics of a Report as CSV rows, preceded by a single
    '#'-prefixed JSON line holding the run configuration."""

    def __init__(self, report_node, config, sampler, k, seed):
        self.report_node = report_node
        self.config = config
        self.sampler = sampler
        self.k = k
        self.seed = seed

    def rows(self):
        for section_name, section_contents in six.iteritems(
                self.report_node.data):
            for stat in section_contents.get(Statistic.ADDS_TO, []):
                yield (self.sampler, section_name, stat["metric"],
                       _format_number(stat["mean"]),
                       _format_number(stat["stderr"]),
                       stat["draws"], self.k, self.seed)

    def write(self, fp):
        fp.write(u"# %s\n" % json.dumps(self.config, sort_keys=True))
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows():
            writer.writerow(row)

    def unicode(self):
        buf = six.StringIO()
        self.write(buf)
        return buf.getvalue()

# vim: set et ts=4 sw=4 :
