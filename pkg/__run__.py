# This file is part of the divsamp project.
#
# This copyrighted material is made available to anyone wishing to use,
# modify, copy, or redistribute it subject to the terms and conditions of
# version 2 of the GNU General Public License.
#
# See the LICENSE file in the source distribution for further information.

from divsamp.divsamp import main
import sys

main(sys.argv[1:])

# vim: set et ts=4 sw=4 :
