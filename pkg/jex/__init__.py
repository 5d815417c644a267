"""jex: kernel, normalizer and command line for judgmental existence"""

from jex.app import app
