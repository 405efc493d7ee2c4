// planted: thread line 21: lock order cycle: ecryptfs_daemon_hash_mux <- ecryptfs_msg_ctx_lists_mux <- msg_ctx->mux <- ecryptfs_daemon_hash_mux
// Three functions that each take two of three mutexes in a different order.

struct mutex {
	int owner;
};

struct ecryptfs_msg_ctx {
	struct mutex mux;
	int state;
};

struct mutex ecryptfs_daemon_hash_mux;
struct mutex ecryptfs_msg_ctx_lists_mux;

int ecryptfs_process_response(struct ecryptfs_msg_ctx *msg_ctx, int seq)
{
	int rc = 0;

	mutex_lock(&msg_ctx->mux);
	mutex_lock(&ecryptfs_daemon_hash_mux);
	rc = find_daemon(seq);
	mutex_unlock(&ecryptfs_daemon_hash_mux);
	if (rc)
		goto unlock;
	msg_ctx->state = seq;
unlock:
	mutex_unlock(&msg_ctx->mux);
out:
	return rc;
}

static int ecryptfs_send_message_locked(int type)
{
	int rc;

	mutex_lock(&ecryptfs_msg_ctx_lists_mux);
	rc = queue_message(type);
	mutex_unlock(&ecryptfs_msg_ctx_lists_mux);
	return rc;
}

int ecryptfs_send_message(int type)
{
	int rc;

	mutex_lock(&ecryptfs_daemon_hash_mux);
	rc = ecryptfs_send_message_locked(type);
	mutex_unlock(&ecryptfs_daemon_hash_mux);
	return rc;
}

int ecryptfs_wait_for_response(struct ecryptfs_msg_ctx *msg_ctx)
{
	int rc = 0;

	mutex_lock(&ecryptfs_msg_ctx_lists_mux);
	mutex_lock(&msg_ctx->mux);
	rc = msg_ctx->state;
	mutex_unlock(&msg_ctx->mux);
	mutex_unlock(&ecryptfs_msg_ctx_lists_mux);
	return rc;
}
