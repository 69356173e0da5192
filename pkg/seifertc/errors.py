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
"""
Exceptions raised by seifertc. Everything derives from ValueError so callers that
only guard against bad input keep working.
"""


class SeifertError(ValueError):
    """Base class for all domain errors."""


class ParseError(SeifertError):
    """Malformed textual input (Seifert data, vectors, rotation lists)."""


class NotCharacteristicError(SeifertError):
    """Vector has the wrong length or violates v_i = Q_ii (mod 2)."""


class DegenerateFormError(SeifertError):
    """The intersection form is singular but an inverse was requested."""


class IllegalStepError(SeifertError):
    """A forward or reverse full-path step was requested where it is not allowed."""


class CapExceededError(SeifertError):
    """A walk hit its step cap where a definite answer was required."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ScheduleError(SeifertError):
    """The blow-up driver failed to realise the requested graphs."""

    def __init__(self, message, configuration=None):
        super().__init__(message)
        self.configuration = configuration


class UnsatisfiableError(SeifertError):
    """No sign assignment extends the given characteristic vector."""
