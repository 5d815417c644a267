"""jex.routers"""

from jex.routers.check import check_router
from jex.routers.derive import derive_router
from jex.routers.normalize import normalize_router
from jex.routers.translate import translate_router
