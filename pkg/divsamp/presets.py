# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

""" Named bundles of option defaults, selected with ``--preset``. A preset
    sits below the config file and the command line in precedence.
"""

from divsamp import DivSampOptions

#: commands whose run size a preset may shrink
SCALED_COMMANDS = ("sample", "qe-bench", "mmd-bench")


class PresetDefaults(object):
    """Option defaults for a named run profile.

        A preset only touches the commands listed in ``commands``; for any
        other command it contributes nothing, so ``dpp-verify`` keeps its
        small brute-force sizes whatever preset is loaded.
    """

    def __init__(self, name, desc="", note=None, opts=None, commands=()):
        """:param name: selection name, as given to ``--preset``
           :param desc: one line description shown by ``list-samplers``
           :param note: free form note on what the preset sets
           :param opts: a sparse ``DivSampOptions``
           :param commands: sub-commands the preset applies to
        """
        self.name = name
        self.desc = desc
        self.note = note
        self.opts = opts if opts is not None else DivSampOptions.sparse()
        self.commands = tuple(commands)

    def applies_to(self, command):
        return command in self.commands

    def apply(self, opts):
        """Merge this preset below the values already set in ``opts``.

            :returns: True if anything was merged
        """
        if not self.applies_to(opts.command):
            return False
        opts.merge(self.opts)
        return True

    def __str__(self):
        return "%s: %s" % (self.name, self.desc)

    def __repr__(self):
        return ("PresetDefaults(name=%r, commands=%r, opts=(%r))"
                % (self.name, self.commands, self.opts))


NO_PRESET = 'none'
DESK_PRESET = 'desk'

PRESETS = {
    NO_PRESET: PresetDefaults(
        NO_PRESET, desc='Do not load a preset',
        note='Use the built-in defaults of every command'),
    DESK_PRESET: PresetDefaults(
        DESK_PRESET, desc='Quick runs on a desktop machine',
        note='100 draws, at most 500 instances per domain',
        opts=DivSampOptions.sparse(draws=100, max_instances=500),
        commands=SCALED_COMMANDS),
}


def find_preset(preset):
    """Look up a preset by name; returns None for unknown names."""
    return PRESETS.get(preset)

# vim: set et ts=4 sw=4 :
