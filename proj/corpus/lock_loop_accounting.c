// planted: lock line 28: variable bytes_done accessed without lock &io_mutex held
// The summary write after the loop happens outside the lock.

struct mutex io_mutex;
int bytes_done;
int io_errors;

int io_submit(int *lens, int n)
{
	int i;

	for (i = 0; i < n; i = i + 1) {
		mutex_lock(&io_mutex);
		bytes_done = bytes_done + lens[i];
		mutex_unlock(&io_mutex);
	}
	mutex_lock(&io_mutex);
	bytes_done = bytes_done + 1;
	mutex_unlock(&io_mutex);
	mutex_lock(&io_mutex);
	bytes_done = bytes_done + 2;
	mutex_unlock(&io_mutex);
	mutex_lock(&io_mutex);
	bytes_done = bytes_done + 3;
	mutex_unlock(&io_mutex);
	if (n < 0)
		io_errors = 1;
	bytes_done = 0;
	return n;
}

void io_account(int len)
{
	mutex_lock(&io_mutex);
	bytes_done = bytes_done + len;
	mutex_unlock(&io_mutex);
}
