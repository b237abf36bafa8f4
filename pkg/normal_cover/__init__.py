from __future__ import absolute_import

from normal_cover.__version__ import __version__
from normal_cover.cli_handler import cli
