"""
Draw diverse minibatches from per-domain feature sets and benchmark the
samplers against each other
"""
# divsamp.py
# command line driver for the divsamp tools

# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

import sys
import json
import logging
import traceback
import pdb
from contextlib import contextmanager

from argparse import ArgumentParser, SUPPRESS, _SubParsersAction

# PYCOMPAT
import six

from divsamp import _divsamp as _
from divsamp import __version__
from divsamp import DivSampOptions
from divsamp.presets import find_preset, PRESETS
from divsamp.features import load_domains, write_feature_table
from divsamp.kernels import GammaSet
from divsamp.samplers import SamplerKind, load_sampler_classes
from divsamp.engine import SamplerEngine, RefreshPolicy
from divsamp.bench import qe_bench, distance_mape_bench, DISTANCES
from divsamp.synth import SynthSpec, generate_domains
from divsamp.verify import verify_kdpp, Z_LIMIT
from divsamp.reporting import CsvReport, PlainTextReport
from divsamp.utilities import DivSampError, fileobj, substream

#: commands that refuse to run without an explicit --seed
SEEDED_COMMANDS = ("qe-bench", "mmd-bench")

SAMPLER_CHOICES = [kind.short_name for kind in SamplerKind] + \
    [kind.value for kind in SamplerKind]


def _common_parser():
    parser = ArgumentParser(add_help=False)
    parser.add_argument("-v", "--verbose", action="count",
                        dest="verbosity", default=0,
                        help="increase verbosity")
    parser.add_argument("--quiet", action="store_true",
                        dest="quiet", default=False,
                        help="only print fatal errors")
    parser.add_argument("--debug", action="store_true",
                        dest="debug", default=False,
                        help="enable interactive debugging using the "
                             "python debugger")
    parser.add_argument("--log-file", action="store", dest="log_file",
                        help="also write the diagnostic log to this file")
    parser.add_argument("--config-file", type=str, action="store",
                        dest="config_file", default="",
                        help="specify alternate configuration file")
    parser.add_argument("--preset", action="store", type=str,
                        dest="preset", default="none",
                        help="a preset identifier ('none' or 'desk')")
    parser.add_argument("--seed", action="store", type=int, dest="seed",
                        help="root seed of every random stream")
    parser.add_argument("--threads", action="store", type=int,
                        dest="threads", default=4,
                        help="number of threads used by benchmarks")
    return parser


def _data_parser():
    parser = ArgumentParser(add_help=False)
    parser.add_argument("--features", action="store", dest="features",
                        help="Feature CSV file")
    parser.add_argument("--domain", action="store", dest="domain",
                        help="only use this domain of the feature file")
    parser.add_argument("--normalize", action="store_true",
                        dest="normalize", default=False,
                        help="z-score every feature with pooled statistics")
    parser.add_argument("--max-instances", action="store", type=int,
                        dest="max_instances",
                        help="randomly subsample domains larger than this")
    parser.add_argument("--class-balance", action="store_true",
                        dest="class_balance", default=False,
                        help="weight instances by inverse class frequency")
    return parser


def _sampler_parser(k=32, draws=1000):
    parser = ArgumentParser(add_help=False)
    parser.add_argument("--sampler", action="store", dest="sampler",
                        choices=SAMPLER_CHOICES, default="random",
                        help="subset sampler")
    parser.add_argument("--k", action="store", type=int, dest="k",
                        default=k, help="subset size per domain")
    parser.add_argument("--draws", action="store", type=int, dest="draws",
                        default=draws, help="number of draws")
    parser.add_argument("--gammas", action="store", dest="gammas",
                        default="0.001,0.01,0.1,1,10",
                        help="comma separated RBF mixture parameters")
    parser.add_argument("--out", action="store", dest="out",
                        help="output file (default: standard output)")
    return parser


def _get_parser():
    """ Build ArgumentParser content"""

    usage_string = ("%(prog)s COMMAND [options]\n\n"
                    "Some examples:\n\n"
                    "generate four synthetic domains:\n"
                    "  # divsamp gen-data --seed 7 --out feats.csv\n\n"
                    "quantisation error of k-DPP subsets:\n"
                    "  # divsamp qe-bench --features feats.csv "
                    "--sampler kdpp --seed 1")

    parser = ArgumentParser(prog="divsamp", usage=usage_string)
    parser.add_argument("--version", action="version",
                        version="%(prog)s " + __version__)
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    common = _common_parser()
    data = _data_parser()

    gen = subparsers.add_parser("gen-data", parents=[common],
                                help="write a synthetic Feature CSV file")
    gen.add_argument("--out", action="store", dest="out",
                     help="Feature CSV file to write")
    gen.add_argument("--domains", action="store", type=int, dest="domains",
                     default=4, help="number of domains")
    gen.add_argument("--per-domain", action="store", type=int,
                     dest="per_domain", default=2000,
                     help="instances per domain")
    gen.add_argument("--dim", action="store", type=int, dest="dim",
                     default=16, help="feature dimension")
    gen.add_argument("--subgroups", action="store", type=int,
                     dest="subgroups", default=8,
                     help="mixture components shared by all domains")
    gen.add_argument("--shift", action="store", type=float, dest="shift",
                     default=1.0,
                     help="norm of each domain's mean offset, in units of "
                          "the unit-variance centre distribution")
    gen.add_argument("--imbalance", action="store", type=float,
                     dest="imbalance", default=0.3,
                     help="tilt of subgroup proportions away from uniform, "
                          "in [0, 1)")
    gen.add_argument("--spread", action="store", type=float, dest="spread",
                     default=0.7,
                     help="root mean square distance of a point from its "
                          "subgroup centre")

    sample = subparsers.add_parser("sample",
                                   parents=[common, data, _sampler_parser()],
                                   help="dump minibatches as JSON lines")
    sample.add_argument("--warmup", action="store_true", dest="warmup",
                        default=False,
                        help="draw weighted random batches until the first "
                             "refresh point")
    sample.add_argument("--period", action="store", type=int,
                        dest="period", default=400,
                        help="refresh the samplers every PERIOD draws")

    subparsers.add_parser("qe-bench",
                          parents=[common, data, _sampler_parser()],
                          help="quantisation error benchmark")

    mmd = subparsers.add_parser("mmd-bench",
                                parents=[common, data, _sampler_parser()],
                                help="MAPE of small-sample domain distances")
    mmd.add_argument("--distance", action="store", dest="distance",
                     choices=DISTANCES, default="mmd",
                     help="distance between domains")
    mmd.add_argument("--held-out", action="store_true", dest="held_out",
                     default=False,
                     help="also report each domain left out in turn")

    verify = subparsers.add_parser("dpp-verify", parents=[common],
                                   help="check k-DPP frequencies against "
                                        "exact probabilities")
    verify.add_argument("--n", action="store", type=int, dest="n",
                        default=6, help="size of the random kernel")
    verify.add_argument("--k", action="store", type=int, dest="k",
                        default=2, help="subset size")
    verify.add_argument("--draws", action="store", type=int, dest="draws",
                        default=200000, help="number of draws")
    verify.add_argument("--gammas", action="store", dest="gammas",
                        default="0.001,0.01,0.1,1,10",
                        help="comma separated RBF mixture parameters")
    verify.add_argument("--out", action="store", dest="out",
                        help="output CSV file (default: standard output)")

    subparsers.add_parser("list-samplers", parents=[common],
                          help="list the available samplers")

    return parser


def _clear_defaults(parser):
    """Reset every argument default to None, in sub-commands too, so that a
    parse only reports what was given explicitly."""
    for action in parser._actions:
        if isinstance(action, _SubParsersAction):
            for subparser in action.choices.values():
                _clear_defaults(subparser)
        elif action.default != SUPPRESS:
            action.default = None


class DivSamp(object):

    """The main divsamp class"""

    def __init__(self, args):
        self._args = args
        self.parser = _get_parser()
        parsed = self.parser.parse_args(args)
        if not parsed.command:
            self.parser.error("a command is required")

        # defaults of the selected command
        self.opts = DivSampOptions.from_args(
            self.parser.parse_args([parsed.command]))

        # then the options given on the command line, which win over the
        # config file and the preset
        _clear_defaults(self.parser)
        cmd_opts = DivSampOptions.from_args(self.parser.parse_args(args),
                                            sparse=True)
        self.opts.merge(cmd_opts)

        self.ignored_config = []
        if self.opts.config_file:
            fileopts, self.ignored_config = DivSampOptions.from_file(
                self.parser, self.opts.config_file, self.opts.command)
            self.opts.merge(fileopts)

        self.preset = find_preset(self.opts.preset)
        if not self.preset:
            self.parser.error("unknown preset '%s' (known: %s)"
                              % (self.opts.preset,
                                 ", ".join(sorted(PRESETS))))
        preset_applied = self.preset.apply(self.opts)

        if self.opts.seed is None:
            if self.opts.command in SEEDED_COMMANDS:
                self.parser.error("%s requires an explicit --seed"
                                  % self.opts.command)
            self.opts.seed = 0

        self._setup_logging()
        if preset_applied:
            self.log.debug("applied preset %r" % self.preset)
        for key in self.ignored_config:
            self.log.warning("ignoring configuration entry '%s' for %s"
                             % (key, self.opts.command))

    def _setup_logging(self):
        # main log
        self.log = logging.getLogger('divsamp')
        self.log.setLevel(logging.DEBUG)
        self.log.propagate = False
        for handler in list(self.log.handlers):
            self.log.removeHandler(handler)

        console = logging.StreamHandler(sys.stderr)
        console.setFormatter(logging.Formatter('%(message)s'))
        if self.opts.quiet:
            console.setLevel(logging.ERROR)
        elif self.opts.verbosity and self.opts.verbosity > 1:
            console.setLevel(logging.DEBUG)
        elif self.opts.verbosity and self.opts.verbosity > 0:
            console.setLevel(logging.INFO)
        else:
            console.setLevel(logging.WARNING)
        self.log.addHandler(console)

        if self.opts.log_file:
            flog = logging.FileHandler(self.opts.log_file)
            flog.setFormatter(logging.Formatter(
                '%(asctime)s %(levelname)s: %(message)s'))
            flog.setLevel(logging.DEBUG if self.opts.verbosity
                          else logging.INFO)
            self.log.addHandler(flog)

        # ui log; results go to stdout when there is no --out, so progress
        # moves to stderr then
        self.ui_log = logging.getLogger('divsamp_ui')
        self.ui_log.setLevel(logging.INFO)
        self.ui_log.propagate = False
        for handler in list(self.ui_log.handlers):
            self.ui_log.removeHandler(handler)
        if not self.opts.quiet:
            stream = sys.stdout if self.opts.out else sys.stderr
            ui_console = logging.StreamHandler(stream)
            ui_console.setFormatter(logging.Formatter('%(message)s'))
            ui_console.setLevel(logging.INFO)
            self.ui_log.addHandler(ui_console)

    def print_header(self):
        self.ui_log.info(_("divsamp (version %s)") % __version__)

    def handle_exception(self):
        (etype, val, tb) = sys.exc_info()
        traceback.print_exception(etype, val, tb, file=sys.stderr)
        six.print_(file=sys.stderr)
        if sys.stderr.isatty() and not hasattr(sys, 'ps1'):
            # start the debugger in post-mortem mode
            pdb.post_mortem(tb)

    def config(self):
        """The resolved run configuration recorded with every output"""
        return {"version": __version__,
                "command_line": " ".join(self.opts.to_args()),
                "options": self.opts.dict()}

    def write_sidecar(self):
        path = self.opts.out + ".config.json"
        with fileobj(path, 'w') as fp:
            fp.write(six.text_type(json.dumps(self.config(), sort_keys=True,
                                              indent=2)))
            fp.write(u"\n")
        self.log.debug("wrote run configuration to %s" % path)

    @contextmanager
    def output(self):
        if self.opts.out and self.opts.out != "-":
            with fileobj(self.opts.out, 'w') as fp:
                yield fp
        else:
            with fileobj(sys.stdout) as fp:
                yield fp

    def _gammas(self):
        return GammaSet.parse(self.opts.gammas)

    def load_collection(self):
        if not self.opts.features:
            self.parser.error("%s requires --features" % self.opts.command)
        collection = load_domains(self.opts.features,
                                  domain_filter=self.opts.domain)
        if self.opts.max_instances is not None:
            collection = collection.capped(self.opts.max_instances,
                                           self.opts.seed)
        if self.opts.normalize:
            collection = collection.standardized()
        self.ui_log.info(_(" Loaded %d domains from %s: %s")
                         % (len(collection), self.opts.features,
                            ", ".join("%s (%d)" % (t.domain, t.n)
                                      for t in collection)))
        return collection

    def gen_data(self):
        if not self.opts.out or self.opts.out == "-":
            self.parser.error("gen-data requires --out FILE")
        spec = SynthSpec(num_domains=self.opts.domains,
                         per_domain=self.opts.per_domain,
                         dim=self.opts.dim,
                         subgroups=self.opts.subgroups,
                         shift_scale=self.opts.shift,
                         imbalance=self.opts.imbalance,
                         cluster_spread=self.opts.spread,
                         seed=self.opts.seed)
        self.log.debug("generating %r" % spec)
        write_feature_table(generate_domains(spec), self.opts.out)
        self.write_sidecar()
        self.ui_log.info(_(" Wrote %d domains of %d instances to %s")
                         % (spec.num_domains, spec.per_domain,
                            self.opts.out))
        return 0

    def sample(self):
        collection = self.load_collection()
        policy = RefreshPolicy(period_t=self.opts.period,
                               warmup=self.opts.warmup)
        engine = SamplerEngine(collection, self.opts.sampler, k=self.opts.k,
                               gammas=self._gammas(), seed=self.opts.seed,
                               policy=policy,
                               class_balance=self.opts.class_balance,
                               log=self.log)
        refreshes = set(policy.refresh_points(self.opts.draws)) - set([0])
        with self.output() as fp:
            for r in range(self.opts.draws):
                if self.opts.warmup and r in refreshes:
                    engine.refresh(collection)
                for tag in collection.tags:
                    subset = engine.next_minibatch(
                        tag, rng=substream(self.opts.seed, tag, r))
                    ids = collection[tag].ids
                    fp.write(six.text_type(json.dumps({
                        "draw": r,
                        "domain": tag,
                        "indices": list(subset),
                        "ids": [ids[i] for i in subset]})) + u"\n")
        if self.opts.out and self.opts.out != "-":
            self.write_sidecar()
        self.ui_log.info(_(" Drew %d batches of %d per domain with %s")
                         % (self.opts.draws, self.opts.k, engine.kind))
        return 0

    def _write_report(self, result):
        report = result.to_report()
        with self.output() as fp:
            CsvReport(report, self.config(), result.sampler, result.k,
                      result.seed).write(fp)
        if self.opts.out and self.opts.out != "-":
            self.ui_log.info(PlainTextReport(report).unicode())

    def qe_bench(self):
        collection = self.load_collection()
        self.ui_log.info(_(" Running qe-bench: %s, k=%d, %d draws")
                         % (self.opts.sampler, self.opts.k, self.opts.draws))
        result = qe_bench(collection, self.opts.sampler, self.opts.k,
                          self.opts.draws, self._gammas(), self.opts.seed,
                          threads=self.opts.threads,
                          class_balance=self.opts.class_balance,
                          log=self.log)
        self._write_report(result)
        return 0

    def mmd_bench(self):
        collection = self.load_collection()
        self.ui_log.info(_(" Running mmd-bench (%s): %s, k=%d, %d draws")
                         % (self.opts.distance, self.opts.sampler,
                            self.opts.k, self.opts.draws))
        result = distance_mape_bench(collection, self.opts.sampler,
                                     self.opts.k, self.opts.draws,
                                     self._gammas(), self.opts.seed,
                                     distance=self.opts.distance,
                                     held_out=self.opts.held_out,
                                     threads=self.opts.threads,
                                     class_balance=self.opts.class_balance,
                                     log=self.log)
        self._write_report(result)
        return 0

    def dpp_verify(self):
        check = verify_kdpp(self.opts.n, self.opts.k, self.opts.draws,
                            self.opts.seed, gammas=self._gammas())
        with self.output() as fp:
            check.write(fp, config=self.config())
        if not check.passed:
            self.log.error("k-DPP frequencies deviate from the exact "
                           "distribution: max |z| = %.2f > %g"
                           % (check.max_abs_z, Z_LIMIT))
            return 1
        self.ui_log.info(_(" All %d subsets within %g standard deviations "
                           "(max |z| = %.2f)")
                         % (len(check.rows), Z_LIMIT, check.max_abs_z))
        return 0

    def list_samplers(self):
        self.ui_log.info(_("The following samplers are available:"))
        self.ui_log.info("")
        options = []
        classes = load_sampler_classes()
        for kind in SamplerKind:
            sampler = classes[kind]()
            self.ui_log.info(" %-15s %-18s %s" % (sampler.name(), kind,
                                                  sampler.get_description()))
            for name, parms in zip(*sampler.get_all_options()):
                options.append((sampler.name(), name, parms))
        self.ui_log.info("")
        self.ui_log.info(_("The following sampler options are available:"))
        self.ui_log.info("")
        for sampler_name, name, parms in options:
            self.ui_log.info(" %-25s %-20s %s"
                             % ("%s.%s" % (sampler_name, name),
                                parms['enabled'], parms['desc']))
        self.ui_log.info("")
        self.ui_log.info(_("The following presets are available:"))
        self.ui_log.info("")
        for name in sorted(PRESETS):
            preset = PRESETS[name]
            self.ui_log.info(" %-15s %s" % (name, preset.desc))
            if preset.note:
                self.ui_log.info(" %-15s %s" % ("", preset.note))
        return 0

    def execute(self):
        commands = {
            "gen-data": self.gen_data,
            "sample": self.sample,
            "qe-bench": self.qe_bench,
            "mmd-bench": self.mmd_bench,
            "dpp-verify": self.dpp_verify,
            "list-samplers": self.list_samplers,
        }
        try:
            self.print_header()
            return commands[self.opts.command]()
        except KeyboardInterrupt:
            self.ui_log.error("\nExiting on user cancel")
            return 130
        except (DivSampError, OSError, IOError) as e:
            if self.opts.debug:
                self.handle_exception()
                raise
            self.log.error("%s: %s" % (self.opts.command, e))
            return 1


def run(args):
    """Run one divsamp command and return its exit status"""
    try:
        return DivSamp(args).execute()
    except SystemExit as e:
        # argparse reports usage errors (status 2) and --help (status 0)
        return e.code if isinstance(e.code, int) else 1


def main(args):
    """The main entry point"""
    sys.exit(run(args))

# vim: set et ts=4 sw=4 :
