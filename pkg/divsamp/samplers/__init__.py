# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

""" This exports the base class and discovery helpers for divsamp samplers """

import logging
from enum import Enum

from divsamp.utilities import (import_module, ImporterHelper, ValidationError,
                               InsufficientSupportError)
from divsamp.features import class_balance_weights


class SamplerKind(Enum):
    """The closed set of subset samplers"""

    WEIGHTED_RANDOM = 'weighted-random'
    K_DPP = 'k-dpp'
    K_MEANS_PP = 'k-means++'

    @property
    def short_name(self):
        return _SHORT_NAMES[self]

    @classmethod
    def parse(cls, value):
        """Accept either the canonical name ('k-dpp') or the command line
        alias ('kdpp')."""
        if isinstance(value, cls):
            return value
        for kind in cls:
            if value in (kind.value, kind.short_name):
                return kind
        raise ValidationError("unknown sampler '%s' (expected one of %s)"
                              % (value, ", ".join(k.short_name for k in cls)))

    def __str__(self):
        return self.value


_SHORT_NAMES = {
    SamplerKind.WEIGHTED_RANDOM: 'random',
    SamplerKind.K_DPP: 'kdpp',
    SamplerKind.K_MEANS_PP: 'kmeanspp',
}


class Sampler(object):
    """ This is the base class for divsamp samplers. Samplers should subclass
    this and set the class variables where applicable.

    sampler_name is a string returned by sampler.name(). If this is set to
    None (the default) class\\_.__name__.lower() will be returned.

    kind is the SamplerKind implemented by the class; the engine picks the
    sampler class by kind.

    version is a string representing the version of the sampler. It is
    recorded in benchmark reports.

    option_list is a list of (name, description, default) tuples for the
    sampler specific tunables.
    """

    sampler_name = None
    kind = None
    version = 'unversioned'

    def __init__(self, commons=None):
        self.option_list = list(getattr(self, "option_list", None) or [])
        self.commons = commons or {}
        self.opt_names = []
        self.opt_parms = []
        self.table = None
        self.weights = None

        self.log = self.commons.get('log') or logging.getLogger('divsamp')

        # add the 'class_balance' sampler option automatically
        self.option_list.append(('class_balance',
                                 'weight instances by inverse class '
                                 'frequency', False))

        for opt in self.option_list:
            self.opt_names.append(opt[0])
            self.opt_parms.append({'desc': opt[1], 'enabled': opt[2]})

    @classmethod
    def name(cls):
        """Returns the sampler's name as a lowercase string."""
        if cls.sampler_name:
            return cls.sampler_name
        return cls.__name__.lower()

    def _format_msg(self, msg):
        return "[sampler:%s] %s" % (self.name(), msg)

    def _log_error(self, msg):
        self.log.error(self._format_msg(msg))

    def _log_warn(self, msg):
        self.log.warning(self._format_msg(msg))

    def _log_info(self, msg):
        self.log.info(self._format_msg(msg))

    def _log_debug(self, msg):
        self.log.debug(self._format_msg(msg))

    def get_all_options(self):
        """return a list of all options selected"""
        return (self.opt_names, self.opt_parms)

    def set_option(self, optionname, value):
        """Set the named option to value. Ensure the original type
           of the option value is preserved.
        """
        for name, parms in zip(self.opt_names, self.opt_parms):
            if name == optionname:
                defaulttype = type(parms['enabled'])
                if defaulttype != type(value) and defaulttype != type(None):
                    if defaulttype is bool and not isinstance(value, bool):
                        value = str(value).lower() in ('1', 'true', 'yes',
                                                       'on')
                    else:
                        value = (defaulttype)(value)
                parms['enabled'] = value
                return True
        return False

    def get_option(self, optionname, default=0):
        """Returns the value of 'optionname' as set by set_option or the
        option default."""
        for name, parms in zip(self.opt_names, self.opt_parms):
            if name == optionname:
                val = parms['enabled']
                if val is not None:
                    return val
        return default

    def get_description(self):
        """ This function will return the description for the sampler"""
        try:
            if hasattr(self, '__doc__') and self.__doc__:
                return self.__doc__.strip()
            return super(self.__class__, self).__doc__.strip()
        except Exception:
            return "<no description available>"

    def setup(self, table):
        """Take a snapshot of ``table`` and rebuild any cached state.

        The effective instance weights are the table weights, or inverse
        class-frequency weights when the class_balance option is set.
        """
        self.table = table
        if self.get_option('class_balance'):
            self.weights = class_balance_weights(table)
        else:
            self.weights = table.weights
        self.prepare()

    def prepare(self):
        """Rebuild sampler caches from self.table. To be replaced by a
        sampler if required."""
        pass

    def check_support(self, k):
        support = int((self.weights > 0).sum())
        if k > support:
            raise InsufficientSupportError(
                "cannot draw %d distinct instances from domain '%s': only "
                "%d have positive weight" % (k, self.table.domain, support))

    def sample(self, k, rng):
        """Draw one subset of k distinct instances of the current table"""
        raise NotImplementedError


def import_sampler(name, superclasses=None):
    """Import name as a module and return a list of all classes defined in that
    module. superclasses should be a tuple of valid superclasses to import,
    this defaults to (Sampler,).
    """
    sampler_fqname = "divsamp.samplers.%s" % name
    if not superclasses:
        superclasses = (Sampler,)
    return import_module(sampler_fqname, superclasses)


def load_sampler_classes():
    """Return a dict mapping each SamplerKind to its sampler class"""
    import divsamp.samplers
    helper = ImporterHelper(divsamp.samplers)
    classes = {}
    for module in helper.get_modules():
        for sampler_class in import_sampler(module):
            if sampler_class.kind is not None:
                classes[sampler_class.kind] = sampler_class
    return classes


def sampler_class(kind):
    kind = SamplerKind.parse(kind)
    classes = load_sampler_classes()
    if kind not in classes:
        raise ValidationError("no sampler implements '%s'" % kind)
    return classes[kind]

# vim: set et ts=4 sw=4 :
