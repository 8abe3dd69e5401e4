import hashlib
import logging
import os.path

from .commons import InvalidInputException

try:
    import fcntl

    use_fcntl = True
except ImportError:
    use_fcntl = False

logger = logging.getLogger("tdl")


def read_file(file_path):
    if not os.path.exists(file_path):
        return None

    try:
        with open(file_path, "r+", encoding="utf8", newline="") as f:
            lock_file(f)
            return f.read()
    except OSError:
        logger.exception("[read-file] read file failed, file path:%s" % file_path)
        return None


def save_file(file_path, content):
    """Write ``content`` under an exclusive lock and return the SHA-256 of the bytes written."""
    base = os.path.dirname(file_path)
    if base and not os.path.isdir(base):
        try:
            os.makedirs(base)
        except OSError:
            logger.warning("[save-file] dir %s is already exist" % base)

    data = content if type(content) == bytes else content.encode("utf8")
    try:
        with open(file_path, "wb") as f:
            lock_file(f)
            f.write(data)
    except OSError:
        logger.exception("[save-file] save file failed, file path:%s" % file_path)
        raise InvalidInputException("Cannot write output file %s." % file_path)
    logger.debug("[save-file] %s bytes to %s" % (len(data), file_path))
    return digest(data)


def digest(content):
    data = content if type(content) == bytes else content.encode("utf8")
    return hashlib.sha256(data).hexdigest()


def lock_file(f):
    if use_fcntl:
        fcntl.flock(f, fcntl.LOCK_EX)
