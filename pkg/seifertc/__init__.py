###############################################################################
#                                                                             #
#    This program is free software: you can redistribute it and/or modify     #
#    it under the terms of the GNU General Public License as published by     #
#    the Free Software Foundation, either version 3 of the License, or        #
#    (at your option) any later version.                                      #
#                                                                             #
#    This program is distributed in the hope that it will be useful,          #
#    but WITHOUT ANY WARRANTY; without even the implied warranty of           #
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the            #
#    GNU General Public License for more details.                             #
#                                                                             #
#    You should have received a copy of the GNU General Public License        #
#    along with this program. If not, see <http://www.gnu.org/licenses/>.     #
#                                                                             #
###############################################################################

__title__ = 'seifertc'
__description__ = 'Magic C vectors, full paths and contact invariants of small Seifert fibred spaces'
__version__ = '0.1.0'
__author__ = 'seifertc developers'
__license__ = 'GPL3'

from seifertc.globals import *
from seifertc.errors import *
from seifertc.utils import *
from seifertc.plumbing import *
from seifertc.fullpath import *
from seifertc.embedding import *
from seifertc.contact import *
from seifertc.invariants import *
from seifertc.reproduce import *
from seifertc.interface import *
from seifertc.cmd import *
