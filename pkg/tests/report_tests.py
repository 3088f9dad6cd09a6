#!/usr/bin/env python

import json
import unittest

from divsamp.reporting import (Report, Section, Statistic,
                               PlainTextReport, CsvReport, CSV_COLUMNS)


class ReportTest(unittest.TestCase):

    def test_empty(self):
        report = Report()

        expected = json.dumps({})

        self.assertEqual(expected, str(report))

    def test_nested_section(self):
        report = Report()
        section = Section(name="section")
        report.add(section)

        expected = json.dumps({"section": {}})

        self.assertEqual(expected, str(report))

    def test_sections_keep_order(self):
        report = Report()
        for name in ("pooled", "domain1", "domain0"):
            report.add(Section(name=name))

        self.assertEqual(list(report.data), ["pooled", "domain1", "domain0"])

    def test_statistic(self):
        report = Report()
        section = Section(name="domain0")
        section.add(Statistic("qe", 1.5, 0.25, 10))
        report.add(section)

        self.assertEqual(json.loads(str(report)),
                         {"domain0": {"statistics": [
                             {"metric": "qe", "mean": 1.5, "stderr": 0.25,
                              "draws": 10}]}})

    def test_leaf_only_in_section(self):
        report = Report()
        report.add(Statistic("qe", 1.0, 0.0, 1))

        self.assertEqual(str(report), json.dumps({}))


class TestPlainReport(unittest.TestCase):

    def setUp(self):
        self.report = Report()
        self.section = Section(name="a|b")
        self.div = '\n' + PlainTextReport.DIVIDER

    def test_basic(self):
        self.assertEqual(u'', PlainTextReport(self.report).unicode())

    def test_one_section(self):
        self.report.add(self.section)

        self.assertEqual(u'a|b' + self.div,
                         PlainTextReport(self.report).unicode())

    def test_statistics(self):
        self.section.add(Statistic("mmd_mape", 12.5, 0.5, 100))
        self.section.add(Statistic("qe", 3.0, 0.25, 10))
        self.report.add(self.section)

        self.assertEqual(u'a|b' + self.div + u'\n'
                         u'-  statistics:\n'
                         u'  * mmd_mape: 12.5 +/- 0.5 (100 draws)\n'
                         u'  * qe: 3 +/- 0.25 (10 draws)',
                         PlainTextReport(self.report).unicode())


class TestCsvReport(unittest.TestCase):

    def test_rows(self):
        report = Report()
        for name, mean in (("domain0", 2.5), ("pooled", 3.0)):
            section = Section(name=name)
            section.add(Statistic("qe", mean, 0.125, 4))
            report.add(section)

        lines = CsvReport(report, {"seed": 3}, "kdpp", 8, 3).unicode() \
            .splitlines()

        self.assertEqual(lines[0], '# {"seed": 3}')
        self.assertEqual(lines[1], ",".join(CSV_COLUMNS))
        self.assertEqual(lines[2], "kdpp,domain0,qe,2.5,0.125,4,8,3")
        self.assertEqual(lines[3], "kdpp,pooled,qe,3.0,0.125,4,8,3")


if __name__ == "__main__":
    unittest.main()

# vim: set et ts=4 sw=4 :
