// planted: automaton line 12: double unlock of &dev_lock
// The error path unlocks, then falls through to a second unlock.

struct mutex dev_lock;
int dev_state;

int dev_reset(int force)
{
	mutex_lock(&dev_lock);
	if (force)
		mutex_unlock(&dev_lock);
	mutex_unlock(&dev_lock);
	return 0;
}
