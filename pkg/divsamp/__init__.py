# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.


"""
This module houses the i18n setup and message function, and the run
configuration shared by every divsamp command. The default is to use gettext
to internationalize messages.
"""

import gettext
import six

if six.PY3:
    from configparser import ConfigParser, Error
else:
    from ConfigParser import ConfigParser, Error

from divsamp.utilities import ValidationError

__version__ = "1.0"

gettext_dir = "/usr/share/locale"
gettext_app = "divsamp"

gettext.bindtextdomain(gettext_app, gettext_dir)


def _default(msg):
    return gettext.dgettext(gettext_app, msg)


_divsamp = _default

# Global option definitions
# These live in the package itself so that both the driver and the presets
# module can use them without recursive imports.

#: Names of all arguments
_arg_names = [
    'class_balance', 'command', 'config_file', 'debug', 'dim', 'distance',
    'domain', 'domains', 'draws', 'features', 'gammas', 'held_out',
    'imbalance', 'k', 'log_file', 'max_instances', 'n', 'normalize', 'out',
    'per_domain', 'period', 'preset', 'quiet', 'sampler', 'seed', 'shift',
    'spread', 'subgroups', 'threads', 'verbosity', 'warmup'
]

#: Arguments with non-zero default values
_arg_defaults = {
    "dim": 16,
    "distance": "mmd",
    "domains": 4,
    "draws": 1000,
    "gammas": "0.001,0.01,0.1,1,10",
    "imbalance": 0.3,
    "k": 32,
    "n": 6,
    "per_domain": 2000,
    "period": 400,
    "preset": "none",
    "sampler": "random",
    "shift": 1.0,
    "spread": 0.7,
    "subgroups": 8,
    "threads": 4,
    # Verbosity has an explicit zero default since the ArgumentParser
    # count action default is None.
    "verbosity": 0
}

#: Options that take no value on the command line
_flag_args = ("class-balance", "debug", "held-out", "normalize", "quiet",
              "warmup")


def _is_seq(val):
    """Return true if val is an instance of a known sequence type.
    """
    val_type = type(val)
    return val_type is list or val_type is tuple


class DivSampOptions(object):

    def _merge_opt(self, opt, src, is_default):
        def _unset(val):
            return (val == "" or val is None)

        if hasattr(src, opt):
            newvalue = getattr(src, opt)
            oldvalue = getattr(self, opt)
            # overwrite value iff:
            # - we replace unset option by a real value
            # - new default is set, or
            # - non-sequential variable keeps its default value
            if (_unset(oldvalue) and not _unset(newvalue)) or \
               is_default or \
               ((opt not in self._nondefault) and (not _is_seq(newvalue))):
                setattr(self, opt, newvalue)
                if is_default:
                    self._nondefault.discard(opt)
                else:
                    self._nondefault.add(opt)

    def _merge_opts(self, src, is_default):
        for arg in _arg_names:
            self._merge_opt(arg, src, is_default)

    def __str(self, quote=False, sep=" ", prefix="", suffix=""):
        """Format a DivSampOptions object as a human or machine readable
            string.

            :param quote: quote option values
            :param sep: list separator string
            :param prefix: arbitrary prefix string
            :param suffix: arbitrary suffix string
        """
        vals = [getattr(self, arg) for arg in _arg_names]
        if quote:
            vals = ["'%s'" % v if isinstance(v, six.string_types) else v
                    for v in vals]
        args = ["%s=%s" % (arg, val) for arg, val in zip(_arg_names, vals)]
        return prefix + sep.join(args) + suffix

    def __str__(self):
        return self.__str()

    def __repr__(self):
        return self.__str(quote=True, sep=", ", prefix="DivSampOptions(",
                          suffix=")")

    def __init__(self, **kwargs):
        """Initialise a new ``DivSampOptions`` object from keyword arguments.

            A ``ValueError`` is raised is any of the supplied keyword
            arguments does not correspond to a known ``DivSampOptions``
            attribute name.

            :param *kwargs: a list of ``DivSampOptions`` keyword args.
            :returns: the new ``DivSampOptions`` object.
        """
        self.class_balance = False
        self.command = None
        self.config_file = ""
        self.debug = False
        self.dim = _arg_defaults["dim"]
        self.distance = _arg_defaults["distance"]
        self.domain = None
        self.domains = _arg_defaults["domains"]
        self.draws = _arg_defaults["draws"]
        self.features = None
        self.gammas = _arg_defaults["gammas"]
        self.held_out = False
        self.imbalance = _arg_defaults["imbalance"]
        self.k = _arg_defaults["k"]
        self.log_file = None
        self.max_instances = None
        self.n = _arg_defaults["n"]
        self.normalize = False
        self.out = None
        self.per_domain = _arg_defaults["per_domain"]
        self.period = _arg_defaults["period"]
        self.preset = _arg_defaults["preset"]
        self.quiet = False
        self.sampler = _arg_defaults["sampler"]
        self.seed = None
        self.shift = _arg_defaults["shift"]
        self.spread = _arg_defaults["spread"]
        self.subgroups = _arg_defaults["subgroups"]
        self.threads = _arg_defaults["threads"]
        self.verbosity = _arg_defaults["verbosity"]
        self.warmup = False
        self._nondefault = set()
        for arg in kwargs.keys():
            if arg not in _arg_names:
                raise ValueError("Unknown DivSampOptions attribute: %s" % arg)
            setattr(self, arg, kwargs[arg])

    @classmethod
    def sparse(cls, **kwargs):
        """Return an object where every option not named in ``kwargs`` is
            unset, suitable for merging only those options.
        """
        opts = cls()
        for arg in _arg_names:
            setattr(opts, arg, None)
        for arg in kwargs.keys():
            if arg not in _arg_names:
                raise ValueError("Unknown DivSampOptions attribute: %s" % arg)
            setattr(opts, arg, kwargs[arg])
        return opts

    @classmethod
    def from_args(cls, args, sparse=False):
        """Initialise a new DivSampOptions object from a ``Namespace``
            obtained by parsing command line arguments.

            :param args: parsed command line arguments
            :param sparse: leave options missing from ``args`` unset
            :returns: an initialised DivSampOptions object
            :returntype: DivSampOptions
        """
        opts = DivSampOptions.sparse() if sparse else DivSampOptions()
        opts._merge_opts(args, True)
        return opts

    @classmethod
    def _opt_to_args(cls, opt, val):
        """Convert a named option and optional value to command line
            argument notation, correctly handling options that take
            no value or that have special representations (e.g. verbose).
        """
        opt = opt.replace("_", "-")
        count = ("verbose", "verbosity")
        if opt in _flag_args:
            if val.strip().lower() in ("1", "true", "yes", "on"):
                return ["--%s" % opt]
            return []
        if opt in count:
            return ["--verbose" for d in range(0, int(val))]
        return ["--" + opt + "=" + val]

    @classmethod
    def from_file(cls, argparser, config_file, command, is_default=True):
        """Read options for ``command`` from an INI file.

            Keys in ``[general]`` apply to every command; keys in the section
            named after the command override them. Keys that the command
            does not accept are ignored.

            :returns: a tuple (options, ignored keys)
        """
        opts = DivSampOptions.sparse()
        config = ConfigParser()
        try:
            with open(config_file) as f:
                config.read_file(f)
        except Error as e:
            raise ValidationError('Failed to parse configuration file %s: %s'
                                  % (config_file, e))
        except (OSError, IOError) as e:
            raise ValidationError('Unable to read configuration file %s: %s'
                                  % (config_file, e))

        optlist = []
        for section in ("general", command):
            if config.has_section(section):
                for opt, val in config.items(section):
                    optlist.extend(DivSampOptions._opt_to_args(opt, val))
        args, ignored = argparser.parse_known_args([command] + optlist)
        opts._merge_opts(args, is_default)
        return opts, ignored

    def merge(self, src, skip_default=True):
        """Merge another set of ``DivSampOptions`` into this object.

            Merge two ``DivSampOptions`` objects by setting unset or default
            values to their value in the ``src`` object.

            :param src: the ``DivSampOptions`` object to copy from
            :param skip_default: ignore unset (``None``) values in ``src``
        """
        for arg in _arg_names:
            if not hasattr(src, arg):
                continue
            if getattr(src, arg) is not None or not skip_default:
                self._merge_opt(arg, src, False)

    def dict(self):
        """Return this ``DivSampOptions`` option values as a dictionary of
            argument name to value mappings.

            :returns: a name:value dictionary of option values.
        """
        odict = {}
        for arg in _arg_names:
            odict[arg] = getattr(self, arg)
        return odict

    def to_args(self):
        """Return command arguments for this object.

            Return the command followed by the non-default options of this
            ``DivSampOptions`` object in ``divsamp`` command line argument
            notation:

                ``["qe-bench", "--sampler kdpp", "--seed 7", "-vv"]``

        """
        def has_value(name, value):
            """ Test for non-null option values.
            """
            null_values = ("False", "None", "[]", '""', "''")
            if value is None or value is False or value == "" or \
                    str(value) in null_values:
                return False
            if name in _arg_defaults:
                if str(value) == str(_arg_defaults[name]):
                    return False
            return True

        def filter_opt(name, value):
            """ Filter out the command itself and null-valued options.
            """
            if name == "command":
                return False
            return has_value(name, value)

        def argify(name, value):
            """ Convert divsamp option notation to command line arguments.
            """
            # Handle --verbosity specially
            if name.startswith("verbosity"):
                arg = "-" + int(value) * "v"
                return arg

            name = name.replace("_", "-")

            value = ",".join(value) if _is_seq(value) else value

            if value is not True:
                opt = "%s %s" % (name, value)
            else:
                opt = name

            arg = "--" + opt if len(opt) > 1 else "-" + opt
            return arg

        opt_items = sorted(self.dict().items(), key=lambda x: x[0])
        args = [argify(n, v) for (n, v) in opt_items if filter_opt(n, v)]
        return ([self.command] if self.command else []) + args

# vim: set et ts=4 sw=4 :
