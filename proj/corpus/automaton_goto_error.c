// planted: automaton line 25: lock &dev->io_lock held at exit
// The goto error path skips the unlock that the normal path performs.

struct mutex {
	int owner;
};

struct device {
	struct mutex io_lock;
	int busy;
};

int dev_transfer(struct device *dev, int len)
{
	int rc = 0;

	mutex_lock(&dev->io_lock);
	if (len > 4096) {
		rc = -7;
		goto out;
	}
	dev->busy = len;
	mutex_unlock(&dev->io_lock);
out:
	return rc;
}
